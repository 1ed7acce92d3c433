#include "geoflow/symmetry.hpp"

#include "geoflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace geoflow {

SolutionMap SymmetrySpec::solution_map(double epsilon) const {
    if (!grid_compatible || !rule_)
        throw Error(ErrorCode::Unsupported, "grid-incompatible: " + generator_id +
                                                " rescales x, which does not map the periodic domain to itself; "
                                                "verified symbolically via invariance-check");
    if (!std::isfinite(epsilon)) throw Error(ErrorCode::InvalidArgument, "group parameter must be finite");
    return rule_(epsilon);
}

namespace {

SolutionMap space_shift(double s) {
    SolutionMap m;
    m.shift = -s;
    return m;
}

SolutionMap time_shift(double s) {
    SolutionMap m;
    m.time_offset = -s;
    return m;
}

SolutionMap time_scaling(double s) {
    SolutionMap m;
    m.amplitude = m.time_scale = std::exp(s);
    return m;
}

}  // namespace

std::vector<SymmetrySpec> list_symmetries(const EquationConfig& equation) {
    const Equation eq = equation.equation();
    if (eq == Equation::Hopf)
        throw Error(ErrorCode::Unsupported,
                    "hopf: the Hopf equation is excluded from the symmetry analysis (its generator coefficients are "
                    "only known implicitly)");
    const double eps = equation.eps;
    const auto gens = jet::spanning_generators(eq);
    std::vector<SymmetrySpec> out;
    for (const auto& g : gens) {
        SymmetrySpec s;
        s.equation = equation;
        s.label = g.label;
        s.generator_id = std::string(short_name(eq)) + "." + g.label;
        s.kind = g.kind;
        s.generator = g.field;
        out.push_back(std::move(s));
    }
    auto set = [&](std::size_t i, std::string action, std::string rule, std::function<SolutionMap(double)> f) {
        out[i].group_action = std::move(action);
        out[i].solution_rule = std::move(rule);
        out[i].grid_compatible = static_cast<bool>(f);
        out[i].rule_ = std::move(f);
    };
    const std::string tt = "(t + s, x, u)", tt_rule = "f(t - s, x)";
    const std::string xt = "(t, x + s, u)", xt_rule = "f(t, x - s)";
    switch (eq) {
    case Equation::CamassaHolm:
        set(0, "(t e^-s, x, u e^s)", "e^s f(t e^s, x)", time_scaling);
        set(1, tt, tt_rule, time_shift);
        set(2, xt, xt_rule, space_shift);
        break;
    case Equation::HunterSaxton:
    case Equation::DispersiveHS:
        if (eq == Equation::HunterSaxton)
            set(0, "(t e^-s, x, u e^s)", "e^s f(t e^s, x)", time_scaling);
        else
            set(0, "(t e^-s, x, (u - eps) e^s + eps)", "e^s f(t e^s, x) + eps (1 - e^s)", [eps](double s) {
                SolutionMap m = time_scaling(s);
                m.offset = eps * (1.0 - std::exp(s));
                return m;
            });
        set(1, tt, tt_rule, time_shift);
        set(2, "(t e^s, x e^s, u)", "f(t e^-s, x e^-s)", nullptr);
        set(3, xt, xt_rule, space_shift);
        break;
    case Equation::KdV:
        set(0, xt, xt_rule, space_shift);
        set(1, tt, tt_rule, time_shift);
        set(2, "(t, x + 3 s t, u + s)", "f(t, x - 3 s t) + s", [](double s) {
            SolutionMap m;
            m.drift = -3.0 * s;
            m.offset = s;
            return m;
        });
        set(3, "(t e^(3s), x e^s, u e^(-2s))", "e^(-2s) f(t e^(-3s), x e^-s)", nullptr);
        break;
    case Equation::DispersiveCH:
        set(0, "(t e^-s, x + (3 eps/2) t (1 - e^-s), (u + eps/2) e^s - eps/2)",
            "e^s f(t e^s, x + (3 eps/2) t (1 - e^s)) + (eps/2) (e^s - 1)", [eps](double s) {
                SolutionMap m = time_scaling(s);
                m.drift = 1.5 * eps * (1.0 - std::exp(s));
                m.offset = 0.5 * eps * (std::exp(s) - 1.0);
                return m;
            });
        set(1, tt, tt_rule, time_shift);
        set(2, xt, xt_rule, space_shift);
        break;
    case Equation::Hopf: break;
    }
    return out;
}

SymmetrySpec find_symmetry(const EquationConfig& equation, std::string_view name) {
    auto specs = list_symmetries(equation);
    for (auto& s : specs)
        if (s.label == name || s.generator_id == name) return s;
    std::string known;
    for (const auto& s : specs) known += (known.empty() ? "" : ", ") + s.label;
    throw Error(ErrorCode::InvalidArgument, "unknown generator '" + std::string(name) + "' for " +
                                                std::string(short_name(equation.equation())) + " (known: " + known + ")");
}

GridField transform_snapshot(const SolutionMap& map, double t, const GridField& source) {
    const double c = map.drift * t + map.shift;
    GridField g = c == 0.0 ? source : translate(source, -c);
    if (map.amplitude != 1.0) g *= map.amplitude;
    if (map.offset != 0.0) g += map.offset;
    return g;
}

Trajectory transform_solution(const SymmetrySpec& spec, double epsilon, const Trajectory& traj) {
    const SolutionMap map = spec.solution_map(epsilon);
    const double tau = map.time_scale, t0 = map.time_offset;
    Trajectory out;
    out.config = traj.config;
    out.dt = traj.dt / tau;
    out.requested_t_end = (traj.requested_t_end - t0) / tau;
    out.truncated = traj.truncated;
    out.warnings = traj.warnings;
    out.blew_up = traj.blew_up;
    if (traj.blowup_time) out.blowup_time = (*traj.blowup_time - t0) / tau;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        double t = (traj.times[k] - t0) / tau;
        if (t < -1e-12 * std::max(1.0, std::abs(traj.times[k]))) continue;
        t = std::max(t, 0.0);
        GridField g = transform_snapshot(map, t, traj.snapshots[k]);
        out.invariant_log.push_back(invariants(out.config, g));
        out.snapshots.push_back(std::move(g));
        out.times.push_back(t);
    }
    if (out.times.empty())
        throw Error(ErrorCode::OutOfRange, "time outside trajectory range: the rule needs f at t = " +
                                               std::to_string(t0) + " or later, the trajectory ends at " +
                                               std::to_string(traj.times.empty() ? 0.0 : traj.times.back()));
    return out;
}

ConsistencyReport symmetry_consistency_test(const SymmetrySpec& spec, double epsilon, const GridField& u0, double t_end,
                                            const SolverOptions& opts) {
    const SolutionMap map = spec.solution_map(epsilon);
    if (map.time_offset < 0.0)
        throw Error(ErrorCode::OutOfRange, "time outside trajectory range: " + spec.generator_id +
                                               " with s > 0 needs the solution before t = 0; use s <= 0");
    if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "final time must be positive");
    const EquationConfig& cfg = spec.equation;

    ConsistencyReport rep;
    rep.generator_id = spec.generator_id;
    rep.epsilon = epsilon;
    rep.t_end = t_end;
    rep.dt = opts.dt;

    GridField start = opts.dealias ? dealias(u0) : u0;
    if (map.time_offset > 0.0) {
        const Trajectory pre = simulate(cfg, start, map.time_offset, opts);
        if (pre.blew_up) {
            rep.blew_up = true;
            rep.original = pre;
            rep.discrepancy = std::numeric_limits<double>::infinity();
            return rep;
        }
        start = pre.snapshots.back();
    }

    // A runs with the rescaled step so its samples land on B's time grid.
    SolverOptions opts_a = opts;
    opts_a.dt = opts.dt * map.time_scale;
    const GridField init_b = transform_snapshot(map, 0.0, start);
    auto run_a = std::async(std::launch::async, [&] { return simulate(cfg, start, map.time_scale * t_end, opts_a); });
    auto run_b = std::async(std::launch::async, [&] { return simulate(cfg, init_b, t_end, opts); });
    rep.original = run_a.get();
    rep.reference = run_b.get();
    for (double& t : rep.original.times) t += map.time_offset;
    rep.original.requested_t_end += map.time_offset;

    if (rep.original.blew_up || rep.reference.blew_up) {
        rep.blew_up = true;
        rep.discrepancy = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.transformed = transform_solution(spec, epsilon, rep.original);

    const auto& T = rep.transformed;
    const auto& B = rep.reference;
    std::size_t compared = 0;
    for (std::size_t k = 0; k < std::min(T.times.size(), B.times.size()); ++k) {
        if (std::abs(T.times[k] - B.times[k]) > 1e-9 * std::max(1.0, B.times[k]))
            throw Error(ErrorCode::InvalidArgument, "transformed and reference snapshots are not aligned in time");
        rep.discrepancy = std::max(rep.discrepancy, (T.snapshots[k] - B.snapshots[k]).max_abs());
        ++compared;
    }
    if (compared == 0) throw Error(ErrorCode::OutOfRange, "no common snapshot times");

    if (T.times.size() >= 3) {
        const std::size_t last = T.times.size() - 2;
        for (std::size_t q = 1; q <= 3; ++q) {
            const std::size_t k = std::clamp<std::size_t>(q * (T.times.size() - 1) / 4, 1, last);
            rep.residual_times.push_back(T.times[k]);
            rep.transformed_residuals.push_back(residual(cfg, T, k));
            rep.original_residuals.push_back(residual(cfg, rep.original, k));
        }
    }
    return rep;
}

}  // namespace geoflow
