#pragma once

// One-parameter symmetry groups acting on numerical solutions, and the
// re-simulation test that a transformed solution is again a solution.

#include "geoflow/catalog.hpp"
#include "geoflow/geodesic.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace geoflow {

/// u_new(t, x) = amplitude * f(time_scale * t + time_offset, x + drift * t + shift) + offset
struct SolutionMap {
    double amplitude = 1.0;
    double time_scale = 1.0;
    double time_offset = 0.0;
    double drift = 0.0;
    double shift = 0.0;
    double offset = 0.0;
};

struct SymmetrySpec {
    EquationConfig equation;
    std::string generator_id;  // e.g. kdv.v3
    std::string label;         // e.g. v3
    jet::SymmetryKind kind = jet::SymmetryKind::SpaceTranslation;
    jet::PointVectorField generator{0, 0, 0};
    std::string group_action;   // exp(s v)(t, x, u), as text
    std::string solution_rule;  // the transformed solution, as text
    bool grid_compatible = true;

    /// Throws Error(Unsupported) for transforms that rescale x.
    SolutionMap solution_map(double epsilon) const;

private:
    friend std::vector<SymmetrySpec> list_symmetries(const EquationConfig&);
    std::function<SolutionMap(double)> rule_;
};

/// Spanning generators with their groups (F1 = t, F2 = 1 for the
/// Hunter-Saxton families). Throws Error(Unsupported) for Hopf.
std::vector<SymmetrySpec> list_symmetries(const EquationConfig& equation);

/// Looks a generator up by label (v3) or id (kdv.v3). Throws
/// Error(InvalidArgument) when absent.
SymmetrySpec find_symmetry(const EquationConfig& equation, std::string_view name);

/// Applies the solution rule to every stored snapshot. Output time t is
/// produced for each stored time T with T = time_scale * t + time_offset and
/// t >= 0; spatial shifts are spectral. Throws Error(Unsupported) for
/// grid-incompatible specs and Error(OutOfRange) if no stored time qualifies.
Trajectory transform_solution(const SymmetrySpec& spec, double epsilon, const Trajectory& traj);

/// The rule applied at a single time t to the field f(time_scale * t + time_offset).
GridField transform_snapshot(const SolutionMap& map, double t, const GridField& source);

struct ConsistencyReport {
    std::string generator_id;
    double epsilon = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
    Trajectory original;     // A: f, sampled at time_offset + time_scale * k * dt
    Trajectory reference;    // B: simulated from the transformed initial data
    Trajectory transformed;  // transform of A
    double discrepancy = 0.0;  // max over common times of |B - transform(A)|_inf
    std::vector<double> residual_times;
    std::vector<double> transformed_residuals;
    std::vector<double> original_residuals;  // A at the matching source times
    bool blew_up = false;
};

/// Time translations need epsilon <= 0 (the rule looks at f(t - epsilon)).
/// Throws Error(Unsupported) for grid-incompatible specs and
/// Error(OutOfRange) for positive time translations.
ConsistencyReport symmetry_consistency_test(const SymmetrySpec& spec, double epsilon, const GridField& u0, double t_end,
                                            const SolverOptions& opts = {});

}  // namespace geoflow
