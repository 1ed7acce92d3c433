#pragma once

// Shared helpers for the test binaries: seeded generators and random
// trigonometric polynomials.

#include "geoflow/spectral.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

namespace geoflow::testing {

inline std::uint64_t seed() {
    if (const char* s = std::getenv("GEOFLOW_SEED")) return std::strtoull(s, nullptr, 10);
    return 20240229ULL;
}

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(seed() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

/// sum_{k<=degree} a_k cos(k x) + b_k sin(k x) with coefficients in [-1, 1],
/// in the units of the grid's circumference.
inline GridField random_trig(const PeriodicGrid& grid, int degree, std::mt19937_64& rng, bool zero_mean = false) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> a(degree + 1), b(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        a[k] = coef(rng);
        b[k] = coef(rng);
    }
    if (zero_mean) a[0] = 0.0;
    return GridField::sample(grid, [&](double x) {
        double s = a[0];
        for (int k = 1; k <= degree; ++k) s += a[k] * std::cos(grid.angular(k) * x) + b[k] * std::sin(grid.angular(k) * x);
        return s;
    });
}

inline double max_diff(const GridField& a, const GridField& b) { return (a - b).max_abs(); }

}  // namespace geoflow::testing
