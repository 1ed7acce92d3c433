#include "geoflow/geodesic.hpp"

#include "geoflow/error.hpp"
#include "geoflow/lie.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace geoflow {

namespace {

using cplx = std::complex<double>;
using Coeffs = std::vector<cplx>;

struct NamedEquation {
    Equation eq;
    std::string_view short_name;
    std::string_view display;
    Group group;
    double alpha;
    double beta;
};

constexpr NamedEquation kEquations[] = {
    {Equation::Hopf, "hopf", "Hopf", Group::DiffPlus, 1.0, 0.0},
    {Equation::CamassaHolm, "ch", "Camassa-Holm", Group::DiffPlus, 1.0, 1.0},
    {Equation::HunterSaxton, "hs", "Hunter-Saxton", Group::DiffPlus, 0.0, 1.0},
    {Equation::KdV, "kdv", "Korteweg-de Vries", Group::Virasoro, 1.0, 0.0},
    {Equation::DispersiveCH, "dch", "dispersive Camassa-Holm", Group::Virasoro, 1.0, 1.0},
    {Equation::DispersiveHS, "dhs", "dispersive Hunter-Saxton", Group::Virasoro, 0.0, 1.0},
};

const NamedEquation& lookup(Equation eq) {
    for (const auto& e : kEquations)
        if (e.eq == eq) return e;
    throw Error(ErrorCode::InvalidArgument, "unknown equation");
}

struct NonFinite {};

GridField checked_field(const PeriodicGrid& grid, const Coeffs& c) {
    for (const auto& z : c)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NonFinite{};
    return synthesize(Spectrum(grid, c));
}

Coeffs coefficients(const GridField& f) {
    const Spectrum s = analyze(f);
    return Coeffs(s.raw().begin(), s.raw().end());
}

bool finite(const Coeffs& c) {
    return std::all_of(c.begin(), c.end(), [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// Splits u_t = L u + N(u) in Fourier space. L = -eps A^{-1} d_xxx is diagonal.
class SplitOperator {
public:
    SplitOperator(const EquationConfig& config, const PeriodicGrid& grid, bool filter)
        : config_(config), grid_(grid), filter_(filter), linear_(grid.size()), inverse_(grid.size()) {
        const Spectrum probe(grid, Coeffs(grid.size()));
        const int nyquist = -static_cast<int>(grid.size() / 2);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const int k = probe.wavenumber(i);
            const double kappa = grid.angular(k);
            const double s = config.metric.symbol(kappa);
            inverse_[i] = (k == 0 && config.metric.degenerate()) ? 0.0 : 1.0 / s;
            // -eps (i kappa)^3 / s = i eps kappa^3 / s; odd derivative drops the Nyquist mode.
            linear_[i] = (k == nyquist) ? cplx(0.0) : cplx(0.0, config.central() * kappa * kappa * kappa) * inverse_[i];
        }
    }

    const Coeffs& linear() const noexcept { return linear_; }

    /// Fourier coefficients of A^{-1}(-ad*_u A u).
    Coeffs nonlinear(const Coeffs& uhat) const {
        Coeffs out;
        try {
            const GridField u = checked_field(grid_, uhat);
            const GridField m = apply_inertia(config_.metric, u);
            const GridField transport =
                product(u, spectral_derivative(m, 1), filter_) + 2.0 * product(spectral_derivative(u, 1), m, filter_);
            out = coefficients(transport);
        } catch (const Error&) {
            // intermediate overflow surfaces as a rejected non-finite field
            throw NonFinite{};
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= -inverse_[i];
        return out;
    }

    Coeffs full(const Coeffs& uhat) const {
        Coeffs out = nonlinear(uhat);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += linear_[i] * uhat[i];
        return out;
    }

private:
    EquationConfig config_;
    PeriodicGrid grid_;
    bool filter_;
    Coeffs linear_;
    Coeffs inverse_;
};

Coeffs axpy(const Coeffs& x, double a, const Coeffs& y) {
    Coeffs out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
    return out;
}

void rk4_step(const SplitOperator& op, Coeffs& u, double h) {
    const Coeffs k1 = op.full(u);
    const Coeffs k2 = op.full(axpy(u, 0.5 * h, k1));
    const Coeffs k3 = op.full(axpy(u, 0.5 * h, k2));
    const Coeffs k4 = op.full(axpy(u, h, k3));
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

// Integrating-factor RK4: v = exp(-L t) u, exact for the linear part.
class IntegratingFactor {
public:
    IntegratingFactor(const Coeffs& linear, double h) : half_(linear.size()), full_(linear.size()) {
        for (std::size_t i = 0; i < linear.size(); ++i) {
            half_[i] = std::exp(0.5 * h * linear[i]);
            full_[i] = half_[i] * half_[i];
        }
    }

    void step(const SplitOperator& op, Coeffs& u, double h) const {
        const std::size_t n = u.size();
        Coeffs tmp(n);
        const Coeffs a = op.nonlinear(u);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = half_[i] * (u[i] + 0.5 * h * a[i]);
        const Coeffs b = op.nonlinear(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = half_[i] * u[i] + 0.5 * h * b[i];
        const Coeffs c = op.nonlinear(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = full_[i] * u[i] + h * half_[i] * c[i];
        const Coeffs d = op.nonlinear(tmp);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = full_[i] * u[i] + h / 6.0 * (full_[i] * a[i] + 2.0 * half_[i] * (b[i] + c[i]) + d[i]);
    }

private:
    Coeffs half_;
    Coeffs full_;
};

}  // namespace

// ---------------------------------------------------------------------------

EquationConfig EquationConfig::make(Equation eq, double eps) {
    const auto& e = lookup(eq);
    return EquationConfig{e.group, MetricParams(e.alpha, e.beta), eps};
}

Equation EquationConfig::equation() const {
    for (const auto& e : kEquations)
        if (e.group == group && metric == MetricParams(e.alpha, e.beta)) return e.eq;
    throw Error(ErrorCode::Unsupported, "metric is not one of L2, H1, homogeneous H1");
}

std::string_view short_name(Equation eq) { return lookup(eq).short_name; }
std::string_view display_name(Equation eq) { return lookup(eq).display; }

std::optional<Equation> parse_equation(std::string_view name) {
    for (const auto& e : kEquations)
        if (e.short_name == name) return e.eq;
    return std::nullopt;
}

std::string_view to_string(Scheme s) { return s == Scheme::RK4 ? "rk4" : "ifrk4"; }

std::optional<Scheme> parse_scheme(std::string_view name) {
    if (name == "rk4") return Scheme::RK4;
    if (name == "ifrk4") return Scheme::IFRK4;
    return std::nullopt;
}

GridField rhs(const EquationConfig& config, const GridField& u, bool filter) {
    const GridField m = apply_inertia(config.metric, u);
    GridField m_t = -(product(u, spectral_derivative(m, 1), filter) + 2.0 * product(spectral_derivative(u, 1), m, filter));
    if (config.group == Group::Virasoro) m_t -= config.eps * spectral_derivative(u, 3);
    // The transport term integrates to zero on the circle; strip the
    // round-off mean so the degenerate inverse is well posed.
    if (config.metric.degenerate()) m_t += -mean(m_t);
    return invert_inertia(config.metric, m_t);
}

GridField equation_residual(const EquationConfig& config, const GridField& u, const GridField& u_t) {
    const double a2 = config.metric.alpha() * config.metric.alpha();
    const double b2 = config.metric.beta() * config.metric.beta();
    const GridField ux = spectral_derivative(u, 1);
    const GridField uxx = spectral_derivative(u, 2);
    const GridField uxxx = spectral_derivative(u, 3);
    GridField r = a2 * u_t - b2 * spectral_derivative(u_t, 2) + 3.0 * a2 * hadamard(u, ux) - 2.0 * b2 * hadamard(ux, uxx) -
                  b2 * hadamard(u, uxxx);
    if (config.group == Group::Virasoro) r += config.eps * uxxx;
    return r;
}

InvariantRecord invariants(const EquationConfig& config, const GridField& u) {
    const GridField m = apply_inertia(config.metric, u);
    return {0.5 * pairing(m, u), integrate(m), integrate(u), pairing(u, u)};
}

double hopf_blowup_estimate(const GridField& u0) {
    const GridField ux = spectral_derivative(u0, 1);
    double steepest = 0.0;
    for (double v : ux.values()) steepest = std::max(steepest, -v);
    if (steepest <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (3.0 * steepest);
}

Trajectory simulate(const EquationConfig& config, const GridField& u0, double t_end, const SolverOptions& opts) {
    if (!(opts.dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    if (!(t_end > 0.0)) throw Error(ErrorCode::InvalidArgument, "final time must be positive");
    if (opts.store_every == 0) throw Error(ErrorCode::InvalidArgument, "store_every must be positive");

    Trajectory traj;
    traj.config = config;
    traj.requested_t_end = t_end;
    double horizon = t_end;
    if (config.equation() == Equation::Hopf) {
        const double t_star = hopf_blowup_estimate(u0);
        if (std::isfinite(t_star) && t_end > opts.blowup_safety * t_star) {
            std::ostringstream msg;
            msg << "Hopf data steepens into a shock at t* = " << t_star << " (1/(3 max(-u0_x)))";
            if (opts.allow_past_blowup) {
                msg << "; continuing to t = " << t_end << " as requested";
            } else {
                horizon = opts.blowup_safety * t_star;
                traj.truncated = true;
                msg << "; run truncated at t = " << horizon;
            }
            traj.warnings.push_back(msg.str());
        }
    }

    const PeriodicGrid& grid = u0.grid();
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / opts.dt - 1e-9)));
    const double h = horizon / static_cast<double>(steps);
    traj.dt = h;

    const SplitOperator op(config, grid, opts.dealias);
    Coeffs u = coefficients(opts.dealias ? dealias(u0) : u0);
    const double base_mean = u[0].real();
    const IntegratingFactor factor(op.linear(), h);

    auto record = [&](double t, const GridField& field) {
        traj.times.push_back(t);
        traj.snapshots.push_back(field);
        traj.invariant_log.push_back(invariants(config, field));
    };
    record(0.0, checked_field(grid, u));

    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step) * h;
        try {
            if (opts.scheme == Scheme::RK4)
                rk4_step(op, u, h);
            else
                factor.step(op, u, h);
            if (!finite(u)) throw NonFinite{};
        } catch (const NonFinite&) {
            traj.blew_up = true;
            traj.blowup_time = t;
            std::ostringstream msg;
            msg << "non-finite state detected at t = " << t;
            traj.warnings.push_back(msg.str());
            return traj;
        }
        // u_t is mean-free in the degenerate metrics; pin the mean exactly.
        if (config.metric.degenerate()) u[0] = base_mean;
        if (step % opts.store_every == 0 || step == steps) record(t, checked_field(grid, u));
    }
    return traj;
}

double residual(const EquationConfig& config, const Trajectory& traj, std::size_t index) {
    if (index < 1 || index + 1 >= traj.times.size())
        throw Error(ErrorCode::OutOfRange, "residual index " + std::to_string(index) + " is not an interior time index");
    const double before = traj.times[index] - traj.times[index - 1];
    const double after = traj.times[index + 1] - traj.times[index];
    if (std::abs(before - after) > 1e-9 * std::max(before, after))
        throw Error(ErrorCode::OutOfRange, "snapshots around index " + std::to_string(index) + " are not uniformly spaced");
    const GridField u_t = (traj.snapshots[index + 1] - traj.snapshots[index - 1]) * (1.0 / (before + after));
    return equation_residual(config, traj.snapshots[index], u_t).max_abs();
}

}  // namespace geoflow
