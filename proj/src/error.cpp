#include "geoflow/error.hpp"

namespace geoflow {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "E_INVALID_ARGUMENT";
        case ErrorCode::GridMismatch: return "E_GRID_MISMATCH";
        case ErrorCode::NotMonotone: return "E_NOT_MONOTONE";
        case ErrorCode::Solvability: return "E_SOLVABILITY";
        case ErrorCode::OutOfRange: return "E_OUT_OF_RANGE";
        case ErrorCode::Parse: return "E_PARSE";
        case ErrorCode::Unsupported: return "E_UNSUPPORTED";
        case ErrorCode::BlowUp: return "E_BLOW_UP";
    }
    return "E_UNKNOWN";
}

}  // namespace geoflow
