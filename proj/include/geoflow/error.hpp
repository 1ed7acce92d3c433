#pragma once

#include <stdexcept>
#include <string>

namespace geoflow {

/// Error categories; the CLI prints them as the machine-readable prefix of
/// its single-line diagnostics.
enum class ErrorCode {
    InvalidArgument,
    GridMismatch,
    NotMonotone,
    Solvability,
    OutOfRange,
    Parse,
    Unsupported,
    BlowUp,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace geoflow
