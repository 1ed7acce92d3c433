#include "geoflow/lie.hpp"

#include "geoflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace geoflow {

GridField ad(const GridField& u, const GridField& v) {
    require_same_grid(u, v, "ad");
    return product(u, spectral_derivative(v, 1)) - product(v, spectral_derivative(u, 1));
}

GridField ad_star(const GridField& u, const GridField& m) {
    require_same_grid(u, m, "ad_star");
    return product(u, spectral_derivative(m, 1)) + 2.0 * product(spectral_derivative(u, 1), m);
}

double pairing(const GridField& m, const GridField& u) {
    require_same_grid(m, u, "pairing");
    return integrate(hadamard(m, u));
}

double gelfand_fuchs(const GridField& u, const GridField& v) {
    require_same_grid(u, v, "gelfand_fuchs");
    return integrate(hadamard(spectral_derivative(u, 1), spectral_derivative(v, 2)));
}

VirasoroVector vir_bracket(const VirasoroVector& lhs, const VirasoroVector& rhs) {
    return {ad(lhs.u, rhs.u), gelfand_fuchs(lhs.u, rhs.u)};
}

VirasoroMomentum vir_ad_star(const VirasoroVector& arg, const VirasoroMomentum& mom) {
    return {ad_star(arg.u, mom.m) + mom.eps * spectral_derivative(arg.u, 3), 0.0};
}

double vir_pairing(const VirasoroMomentum& mom, const VirasoroVector& vec) {
    return pairing(mom.m, vec.u) + mom.eps * vec.a;
}

// ---------------------------------------------------------------------------

namespace {

GridField periodic_part_of(const PeriodicGrid& grid, const std::vector<double>& lift) {
    if (lift.size() != grid.size())
        throw Error(ErrorCode::InvalidArgument, "diffeomorphism has " + std::to_string(lift.size()) +
                                                    " samples for a grid of " + std::to_string(grid.size()));
    for (std::size_t j = 0; j < lift.size(); ++j) {
        if (!std::isfinite(lift[j])) throw Error(ErrorCode::InvalidArgument, "diffeomorphism samples must be finite");
        if (j + 1 < lift.size() && !(lift[j + 1] > lift[j]))
            throw Error(ErrorCode::NotMonotone, "lift is not strictly increasing at grid index " + std::to_string(j));
    }
    if (!(lift.front() + grid.length() > lift.back()))
        throw Error(ErrorCode::NotMonotone, "lift is not increasing across the periodic seam");
    std::vector<double> p(lift.size());
    for (std::size_t j = 0; j < lift.size(); ++j) p[j] = lift[j] - grid.point(j);
    return GridField(grid, std::move(p));
}

}  // namespace

CircleDiffeo::CircleDiffeo(PeriodicGrid grid, std::vector<double> lift_values)
    : lift_(std::move(lift_values)),
      periodic_(periodic_part_of(grid, lift_)),
      interp_(periodic_),
      slope_(spectral_derivative(periodic_, 1)) {}

CircleDiffeo CircleDiffeo::identity(const PeriodicGrid& grid) { return rotation(grid, 0.0); }

CircleDiffeo CircleDiffeo::rotation(const PeriodicGrid& grid, double shift) {
    return from_lift(grid, [shift](double x) { return x + shift; });
}

CircleDiffeo CircleDiffeo::from_lift(const PeriodicGrid& grid, const std::function<double(double)>& lift) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = lift(grid.point(j));
    return CircleDiffeo(grid, std::move(v));
}

GridField CircleDiffeo::derivative(unsigned order) const {
    GridField d = spectral_derivative(periodic_, order);
    if (order == 1) d += 1.0;
    return d;
}

double CircleDiffeo::operator()(double x) const { return x + interp_(x); }

std::vector<double> CircleDiffeo::operator()(std::span<const double> xs) const {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
    return out;
}

double CircleDiffeo::slope_at(double x) const { return 1.0 + slope_(x); }

double CircleDiffeo::inverse_at(double y) const {
    const auto [pmin, pmax] = std::minmax_element(periodic_.values().begin(), periodic_.values().end());
    const double margin = grid().spacing();
    double lo = y - *pmax - margin;
    double hi = y - *pmin + margin;
    // The interpolant can overshoot the samples slightly; widen until bracketed.
    for (int i = 0; i < 60 && (*this)(lo) > y; ++i) lo -= margin;
    for (int i = 0; i < 60 && (*this)(hi) < y; ++i) hi += margin;
    for (int i = 0; i < 30; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < y ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 50; ++i) {
        const double step = ((*this)(x) - y) / slope_at(x);
        x -= step;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) break;
    }
    if (!(std::abs((*this)(x) - y) <= 1e-12 * std::max(1.0, std::abs(y))))
        throw Error(ErrorCode::NotMonotone, "inverse did not converge at y = " + std::to_string(y));
    return x;
}

CircleDiffeo CircleDiffeo::inverse() const {
    std::vector<double> v(grid().size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = inverse_at(grid().point(j));
    return CircleDiffeo(grid(), std::move(v));
}

CircleDiffeo CircleDiffeo::compose(const CircleDiffeo& inner) const {
    if (!(grid() == inner.grid())) throw Error(ErrorCode::GridMismatch, "compose: diffeomorphisms on different grids");
    return CircleDiffeo(grid(), (*this)(inner.lift_values()));
}

// ---------------------------------------------------------------------------

std::vector<double> schwarzian_from_jets(std::span<const double> d1, std::span<const double> d2,
                                         std::span<const double> d3) {
    if (d1.size() != d2.size() || d1.size() != d3.size())
        throw Error(ErrorCode::InvalidArgument, "schwarzian: jet arrays differ in length");
    std::vector<double> s(d1.size());
    for (std::size_t j = 0; j < d1.size(); ++j) {
        if (!(std::abs(d1[j]) > 1e-10))
            throw Error(ErrorCode::NotMonotone,
                        "schwarzian: first derivative vanishes at grid index " + std::to_string(j));
        const double r = d2[j] / d1[j];
        s[j] = d3[j] / d1[j] - 1.5 * r * r;
    }
    return s;
}

GridField schwarzian(const CircleDiffeo& phi) {
    const GridField d1 = phi.derivative(1), d2 = phi.derivative(2), d3 = phi.derivative(3);
    return GridField(phi.grid(), schwarzian_from_jets(d1.values(), d2.values(), d3.values()));
}

double bott_thurston(const CircleDiffeo& phi, const CircleDiffeo& psi) {
    if (!(phi.grid() == psi.grid())) throw Error(ErrorCode::GridMismatch, "bott_thurston: different grids");
    const GridField psi_x = psi.derivative(1);
    const GridField psi_xx = psi.derivative(2);
    const auto lift = psi.lift_values();
    std::vector<double> integrand(lift.size());
    for (std::size_t j = 0; j < lift.size(); ++j) {
        const double slope = phi.slope_at(lift[j]);
        if (!(slope > 0.0))
            throw Error(ErrorCode::NotMonotone, "bott_thurston: phi_x not positive near grid index " + std::to_string(j));
        integrand[j] = std::log(slope) * psi_xx[j] / psi_x[j];
    }
    return 0.5 * integrate(GridField(phi.grid(), std::move(integrand)));
}

GridField adjoint_group_action(const CircleDiffeo& phi, const GridField& u) {
    if (!(phi.grid() == u.grid())) throw Error(ErrorCode::GridMismatch, "adjoint_group_action: different grids");
    const TrigInterpolant ui(u);
    std::vector<double> w(u.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double y = phi.inverse_at(u.grid().point(j));
        w[j] = phi.slope_at(y) * ui(y);
    }
    return GridField(u.grid(), std::move(w));
}

VirasoroMomentum coadjoint_group_action(const CircleDiffeo& phi, const VirasoroMomentum& mom) {
    if (!(phi.grid() == mom.m.grid())) throw Error(ErrorCode::GridMismatch, "coadjoint_group_action: different grids");
    const std::vector<double> m_at_phi = trig_interpolate(mom.m, phi.lift_values());
    const GridField phi_x = phi.derivative(1);
    std::vector<double> out(m_at_phi.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = m_at_phi[j] * phi_x[j] * phi_x[j];
    GridField result(phi.grid(), std::move(out));
    if (mom.eps != 0.0) result += mom.eps * schwarzian(phi);
    return {std::move(result), mom.eps};
}

}  // namespace geoflow
