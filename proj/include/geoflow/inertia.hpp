#pragma once

#include "geoflow/spectral.hpp"

namespace geoflow {

/// Coefficients of the inertia operator A = alpha^2 Id - beta^2 d_xx.
/// (1,0) is L^2, (1,1) is H^1, (0,1) is the homogeneous H^1.
class MetricParams {
public:
    MetricParams(double alpha, double beta);

    static MetricParams l2() { return {1.0, 0.0}; }
    static MetricParams h1() { return {1.0, 1.0}; }
    static MetricParams h1_dot() { return {0.0, 1.0}; }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    bool degenerate() const noexcept { return alpha_ == 0.0; }

    /// alpha^2 + beta^2 kappa^2 for angular wavenumber kappa.
    double symbol(double kappa) const noexcept { return alpha_ * alpha_ + beta_ * beta_ * kappa * kappa; }

    friend bool operator==(const MetricParams&, const MetricParams&) = default;

private:
    double alpha_;
    double beta_;
};

GridField apply_inertia(const MetricParams& params, const GridField& u);

/// Solves A u = m. In the degenerate case m must have zero mean (|mean| <=
/// 1e-10 max(1, |m|_inf)) and the zero-mean solution is returned; otherwise
/// throws Error(Solvability).
GridField invert_inertia(const MetricParams& params, const GridField& m);

/// 1/2 <A u, u>.
double kinetic_energy(const MetricParams& params, const GridField& u);

}  // namespace geoflow
