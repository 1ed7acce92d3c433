#pragma once

// Exact jet-space calculus for scalar PDEs in (t, x): polynomials in jet
// coordinates with rational coefficients, total derivatives, prolongation of
// point vector fields, the infinitesimal invariance test, and commutator
// closure of generator sets.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace geoflow::jet {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

/// A jet coordinate: t, x, u_J (J = (t-order, x-order); u itself is (0,0)), or
/// a named symbolic parameter such as eps or c1.
class JetVar {
public:
    enum class Kind : unsigned char { Param, T, X, U };

    static JetVar t() { return JetVar(Kind::T, 0, 0, {}); }
    static JetVar x() { return JetVar(Kind::X, 0, 0, {}); }
    static JetVar u(int nt = 0, int nx = 0);
    static JetVar param(std::string name);

    Kind kind() const noexcept { return kind_; }
    int nt() const noexcept { return nt_; }
    int nx() const noexcept { return nx_; }
    int order() const noexcept { return nt_ + nx_; }
    const std::string& name() const noexcept { return name_; }
    bool is_derivative() const noexcept { return kind_ == Kind::U && order() > 0; }

    /// u_J with one more derivative in t (dir = T) or x (dir = X).
    JetVar differentiated(Kind dir) const;

    /// t, x, u, u_t, u_txx (t indices first), or the parameter name.
    std::string str() const;

    auto operator<=>(const JetVar&) const = default;

private:
    JetVar(Kind k, int nt, int nx, std::string name) : kind_(k), nt_(nt), nx_(nx), name_(std::move(name)) {}

    Kind kind_;
    int nt_;
    int nx_;
    std::string name_;
};

/// Sorted (variable, exponent > 0) pairs.
using Monomial = std::vector<std::pair<JetVar, int>>;

/// Sparse polynomial in jet coordinates; the zero polynomial has no terms.
class JetPoly {
public:
    JetPoly() = default;
    JetPoly(Rational c);  // NOLINT(google-explicit-constructor)
    JetPoly(long c) : JetPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    JetPoly(int c) : JetPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

    static JetPoly var(const JetVar& v);
    static JetPoly t() { return var(JetVar::t()); }
    static JetPoly x() { return var(JetVar::x()); }
    static JetPoly u(int nt = 0, int nx = 0) { return var(JetVar::u(nt, nx)); }
    static JetPoly param(const std::string& name) { return var(JetVar::param(name)); }
    static JetPoly term(Rational c, Monomial m);

    const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::optional<Rational> constant_value() const;
    std::size_t size() const noexcept { return terms_.size(); }

    bool contains(const JetVar& v) const;
    std::vector<JetVar> variables() const;
    /// Highest derivative order of u present (0 when only u or none).
    int jet_order() const;

    JetPoly partial(const JetVar& v) const;
    JetPoly substitute(const JetVar& v, const JetPoly& value) const;
    JetPoly pow(unsigned e) const;

    JetPoly& operator+=(const JetPoly& o);
    JetPoly& operator-=(const JetPoly& o);
    JetPoly& operator*=(const JetPoly& o);
    friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
    friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
    friend JetPoly operator*(JetPoly a, const JetPoly& b) { return a *= b; }
    friend JetPoly operator-(JetPoly a) { return a *= JetPoly(-1); }
    friend bool operator==(const JetPoly&, const JetPoly&) = default;

    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);

    std::map<Monomial, Rational> terms_;
};

enum class Direction { T, X };

/// D_k p = dp/dk + sum_J u_{J,k} dp/du_J.
JetPoly total_derivative(const JetPoly& p, Direction dir);
/// D_t^nt D_x^nx p.
JetPoly total_derivative(const JetPoly& p, int nt, int nx);

/// v = T d_t + X d_x + U d_u with coefficients in (t, x, u) and parameters.
class PointVectorField {
public:
    /// Throws Error(InvalidArgument) if a coefficient involves u_J, |J| >= 1.
    PointVectorField(JetPoly T, JetPoly X, JetPoly U);

    const JetPoly& T() const noexcept { return T_; }
    const JetPoly& X() const noexcept { return X_; }
    const JetPoly& U() const noexcept { return U_; }

    /// v(f) = T f_t + X f_x + U f_u.
    JetPoly apply(const JetPoly& f) const;
    bool is_zero() const noexcept { return T_.is_zero() && X_.is_zero() && U_.is_zero(); }

    std::string str() const;

    friend PointVectorField operator+(const PointVectorField& a, const PointVectorField& b);
    friend PointVectorField operator*(const JetPoly& s, const PointVectorField& v);
    friend bool operator==(const PointVectorField&, const PointVectorField&) = default;

private:
    JetPoly T_, X_, U_;
};

/// Multi-index (t-order, x-order).
using MultiIndex = std::pair<int, int>;
using Prolongation = std::map<MultiIndex, JetPoly>;

/// phi^J for all |J| <= order, by phi^{J,k} = D_k phi^J - (D_k T) u_{J,t} - (D_k X) u_{J,x}
/// from phi^{(0,0)} = U. Throws Error(OutOfRange) for order > 6.
Prolongation prolong(const PointVectorField& v, int order);

/// pr v [p] = T p_t + X p_x + sum_J phi^J dp/du_J.
JetPoly apply_prolonged(const PointVectorField& v, const Prolongation& pr, const JetPoly& p);

/// Delta = 0 solved for a leading derivative: Delta = c (leading - solved_rhs)
/// with c a nonzero rational.
class PdeForm {
public:
    /// Picks the leading variable automatically when not given: the highest
    /// order derivative with a t index whose coefficient is a nonzero rational.
    /// Throws Error(InvalidArgument) if the chosen variable cannot be isolated.
    explicit PdeForm(JetPoly delta, std::optional<JetVar> leading = std::nullopt);

    const JetPoly& delta() const noexcept { return delta_; }
    const JetVar& leading() const noexcept { return leading_; }
    const JetPoly& solved_rhs() const noexcept { return solved_rhs_; }
    int order() const noexcept { return delta_.jet_order(); }

    /// Replaces the leading derivative and all its total derivatives by their
    /// values on solutions until none remain.
    JetPoly reduce(const JetPoly& p) const;

private:
    JetPoly delta_;
    JetVar leading_;
    JetPoly solved_rhs_;
};

struct InvarianceResult {
    bool holds = false;
    JetPoly raw;        // pr v [Delta]
    JetPoly remainder;  // raw reduced on solutions
};

InvarianceResult invariance_check(const PointVectorField& v, const PdeForm& pde);

/// [v, w] with components v(w_i) - w(v_i).
PointVectorField vf_bracket(const PointVectorField& v, const PointVectorField& w);

/// Coefficients lambda (polynomials in the parameters only) with
/// target = sum lambda_i gens_i, or nullopt when target is outside the span.
/// Throws Error(InvalidArgument) when gens are linearly dependent, and
/// Error(Unsupported) when elimination would need a parameter-dependent pivot.
std::optional<std::vector<JetPoly>> express_in_span(const std::vector<PointVectorField>& gens,
                                                    const PointVectorField& target);

struct ClosureResult {
    bool closed = false;
    std::size_t dimension = 0;
    /// structure[i][j][k]: coefficient of gens[k] in [gens[i], gens[j]].
    std::vector<std::vector<std::vector<JetPoly>>> structure;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
    std::optional<PointVectorField> witness_bracket;
};

ClosureResult closure_check(const std::vector<PointVectorField>& gens);

}  // namespace geoflow::jet
