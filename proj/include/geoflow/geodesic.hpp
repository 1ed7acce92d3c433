#pragma once

// Euler-Poincare geodesic flows on Diff+(S^1) and the Virasoro-Bott group in
// momentum form: m = A u, m_t = -ad*_u m - eps u_xxx.

#include "geoflow/inertia.hpp"
#include "geoflow/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoflow {

enum class Group { DiffPlus, Virasoro };

enum class Equation { Hopf, CamassaHolm, HunterSaxton, KdV, DispersiveCH, DispersiveHS };

struct EquationConfig {
    Group group = Group::DiffPlus;
    MetricParams metric = MetricParams::l2();
    double eps = 1.0;  // ignored for DiffPlus

    static EquationConfig make(Equation eq, double eps = 1.0);

    /// Throws Error(Unsupported) if (group, metric) is not one of the six
    /// named equations.
    Equation equation() const;
    double central() const noexcept { return group == Group::Virasoro ? eps : 0.0; }
};

/// Short names used on the command line: hopf, ch, hs, kdv, dch, dhs.
std::string_view short_name(Equation eq);
std::string_view display_name(Equation eq);
std::optional<Equation> parse_equation(std::string_view name);

enum class Scheme { RK4, IFRK4 };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

struct SolverOptions {
    double dt = 1e-3;
    Scheme scheme = Scheme::IFRK4;
    bool dealias = true;
    unsigned store_every = 1;
    /// Hopf runs stop at safety * t* unless allow_past_blowup is set.
    double blowup_safety = 0.9;
    bool allow_past_blowup = false;
};

struct InvariantRecord {
    double energy = 0.0;         // 1/2 <A u, u>
    double momentum_mean = 0.0;  // integral of A u
    double mass = 0.0;           // integral of u
    double l2 = 0.0;             // integral of u^2
};

struct Trajectory {
    EquationConfig config;
    std::vector<double> times;
    std::vector<GridField> snapshots;
    std::vector<InvariantRecord> invariant_log;
    double dt = 0.0;  // step actually used
    bool blew_up = false;
    std::optional<double> blowup_time;
    bool truncated = false;  // Hopf horizon cut short by the blow-up estimate
    double requested_t_end = 0.0;
    std::vector<std::string> warnings;
};

/// u_t for the geodesic equation; zero-mean whenever alpha = 0.
GridField rhs(const EquationConfig& config, const GridField& u, bool filter = true);

/// Direct evaluation of the expanded equation
/// a^2 u_t - b^2 u_txx + 3a^2 u u_x - 2 b^2 u_x u_xx - b^2 u u_xxx + eps u_xxx
/// given u and u_t (unfiltered products).
GridField equation_residual(const EquationConfig& config, const GridField& u, const GridField& u_t);

InvariantRecord invariants(const EquationConfig& config, const GridField& u);

/// 1 / (3 max(-u0_x)) or +infinity when u0 never decreases.
double hopf_blowup_estimate(const GridField& u0);

/// Never throws on blow-up: a non-finite state stops the run and the
/// trajectory is returned with blew_up set.
Trajectory simulate(const EquationConfig& config, const GridField& u0, double t_end,
                    const SolverOptions& opts = {});

/// Max-norm of the equation at snapshot `index` using second-order centred
/// differences in time. Requires 1 <= index <= size-2 and uniform spacing.
double residual(const EquationConfig& config, const Trajectory& traj, std::size_t index);

}  // namespace geoflow
