#pragma once

// Named property suites over the Lie-algebraic layer and the symbolic
// invariance engine. Each property carries its measured residual and the
// tolerance it was judged against.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geoflow {

struct PropertyResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    bool pass() const;
};

/// diffeo-actions, virasoro, cocycles, invariance, closure.
const std::vector<std::string>& suite_names();

/// GEOFLOW_SEED when set and numeric, otherwise a fixed default.
std::uint64_t default_seed();

/// Throws Error(InvalidArgument) for an unknown suite.
SuiteReport run_suite(std::string_view name, std::uint64_t seed = default_seed());

}  // namespace geoflow
