#pragma once

// Adjoint and coadjoint operators of Vect(S^1) and the Virasoro algebra, the
// Gel'fand-Fuchs and Bott-Thurston cocycles, the Schwarzian derivative, and
// group actions of discretised circle diffeomorphisms.

#include "geoflow/spectral.hpp"

#include <functional>
#include <span>
#include <vector>

namespace geoflow {

/// ad_u v = u v_x - v u_x (dealiased products).
GridField ad(const GridField& u, const GridField& v);

/// ad*_u m = (m u)_x + m u_x = u m_x + 2 u_x m.
GridField ad_star(const GridField& u, const GridField& m);

/// <m dx^2, u d_x> = integral of u m.
double pairing(const GridField& m, const GridField& u);

/// omega(u, v) = integral of u_x v_xx.
double gelfand_fuchs(const GridField& u, const GridField& v);

struct VirasoroVector {
    GridField u;
    double a = 0.0;
};

struct VirasoroMomentum {
    GridField m;
    double eps = 0.0;
};

/// ([u,v], omega(u,v)); the central components of the inputs drop out.
VirasoroVector vir_bracket(const VirasoroVector& lhs, const VirasoroVector& rhs);

/// (ad*_u m + eps u_xxx, 0).
VirasoroMomentum vir_ad_star(const VirasoroVector& arg, const VirasoroMomentum& mom);

double vir_pairing(const VirasoroMomentum& mom, const VirasoroVector& vec);

/// Orientation-preserving circle diffeomorphism stored through the samples
/// phi(x_j) of a lift with phi(x + L) = phi(x) + L. The periodic part
/// phi(x) - x is represented by its trigonometric interpolant.
class CircleDiffeo {
public:
    /// Throws Error(NotMonotone) unless the lift is strictly increasing,
    /// including across the seam (phi(x_0) + L > phi(x_{n-1})).
    CircleDiffeo(PeriodicGrid grid, std::vector<double> lift_values);

    static CircleDiffeo identity(const PeriodicGrid& grid);
    static CircleDiffeo rotation(const PeriodicGrid& grid, double shift);
    static CircleDiffeo from_lift(const PeriodicGrid& grid, const std::function<double(double)>& lift);

    const PeriodicGrid& grid() const noexcept { return periodic_.grid(); }
    std::span<const double> lift_values() const noexcept { return lift_; }

    /// phi(x_j) - x_j.
    const GridField& periodic_part() const noexcept { return periodic_; }

    /// phi_x, phi_xx, phi_xxx on the grid.
    GridField derivative(unsigned order) const;

    /// Lift evaluated at arbitrary reals.
    double operator()(double x) const;
    std::vector<double> operator()(std::span<const double> xs) const;

    /// phi_x at an arbitrary real.
    double slope_at(double x) const;

    /// phi^{-1}(y) by bracketing bisection followed by Newton, to 1e-12.
    double inverse_at(double y) const;
    CircleDiffeo inverse() const;

    /// (this o other)(x_j) = phi(psi(x_j)).
    CircleDiffeo compose(const CircleDiffeo& inner) const;

private:
    std::vector<double> lift_;
    GridField periodic_;
    TrigInterpolant interp_;
    TrigInterpolant slope_;  // phi_x - 1
};

/// S = f'''/f' - 3/2 (f''/f')^2 from pointwise jets. Throws Error(NotMonotone)
/// naming the first index where |f'| <= 1e-10.
std::vector<double> schwarzian_from_jets(std::span<const double> d1, std::span<const double> d2,
                                         std::span<const double> d3);

GridField schwarzian(const CircleDiffeo& phi);

/// B(phi, psi) = 1/2 integral log(phi_x o psi) d log psi_x.
double bott_thurston(const CircleDiffeo& phi, const CircleDiffeo& psi);

/// Push-forward (phi_* u)(x) = phi_x(phi^{-1}(x)) u(phi^{-1}(x)).
GridField adjoint_group_action(const CircleDiffeo& phi, const GridField& u);

/// (m(phi) phi_x^2 + eps S(phi), eps). Satisfies
/// <coadjoint_group_action(phi, mu), X> = <mu, adjoint_group_action(phi, X)> when eps = 0.
VirasoroMomentum coadjoint_group_action(const CircleDiffeo& phi, const VirasoroMomentum& mom);

}  // namespace geoflow
