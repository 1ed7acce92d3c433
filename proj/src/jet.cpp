#include "geoflow/jet.hpp"

#include "geoflow/error.hpp"

#include <algorithm>
#include <set>

namespace geoflow::jet {

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

JetVar JetVar::u(int nt, int nx) {
    if (nt < 0 || nx < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative index");
    return JetVar(Kind::U, nt, nx, {});
}

JetVar JetVar::param(std::string name) {
    if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty parameter name");
    return JetVar(Kind::Param, 0, 0, std::move(name));
}

JetVar JetVar::differentiated(Kind dir) const {
    if (kind_ != Kind::U) throw Error(ErrorCode::InvalidArgument, "only u carries derivative indices");
    if (dir == Kind::T) return u(nt_ + 1, nx_);
    if (dir == Kind::X) return u(nt_, nx_ + 1);
    throw Error(ErrorCode::InvalidArgument, "derivative direction must be t or x");
}

std::string JetVar::str() const {
    switch (kind_) {
    case Kind::T: return "t";
    case Kind::X: return "x";
    case Kind::Param: return name_;
    case Kind::U: break;
    }
    if (order() == 0) return "u";
    return "u_" + std::string(static_cast<std::size_t>(nt_), 't') + std::string(static_cast<std::size_t>(nx_), 'x');
}

// ---------------------------------------------------------------------------

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin(), j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->first < j->first) out.push_back(*i++);
        else if (j->first < i->first) out.push_back(*j++);
        else {
            out.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), i, a.end());
    out.insert(out.end(), j, b.end());
    return out;
}

// exponent of v in m, and m with v removed
std::pair<int, Monomial> extract(const Monomial& m, const JetVar& v) {
    Monomial rest;
    int e = 0;
    for (const auto& [var, k] : m) {
        if (var == v) e = k;
        else rest.emplace_back(var, k);
    }
    return {e, rest};
}

}  // namespace

JetPoly::JetPoly(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

JetPoly JetPoly::var(const JetVar& v) { return term(1, Monomial{{v, 1}}); }

JetPoly JetPoly::term(Rational c, Monomial m) {
    std::sort(m.begin(), m.end());
    Monomial merged;
    for (const auto& [v, e] : m) {
        if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent in monomial");
        if (!merged.empty() && merged.back().first == v) merged.back().second += e;
        else merged.emplace_back(v, e);
    }
    std::erase_if(merged, [](const auto& p) { return p.second == 0; });
    JetPoly p;
    p.add_term(merged, c);
    return p;
}

void JetPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

std::optional<Rational> JetPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
    return std::nullopt;
}

bool JetPoly::contains(const JetVar& v) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [var, e] : m)
            if (var == v) return true;
    return false;
}

std::vector<JetVar> JetPoly::variables() const {
    std::set<JetVar> s;
    for (const auto& [m, c] : terms_)
        for (const auto& [var, e] : m) s.insert(var);
    return {s.begin(), s.end()};
}

int JetPoly::jet_order() const {
    int k = 0;
    for (const auto& v : variables())
        if (v.kind() == JetVar::Kind::U) k = std::max(k, v.order());
    return k;
}

JetPoly JetPoly::partial(const JetVar& v) const {
    JetPoly out;
    for (const auto& [m, c] : terms_) {
        auto [e, rest] = extract(m, v);
        if (e == 0) continue;
        if (e > 1) {
            rest.emplace_back(v, e - 1);
            std::sort(rest.begin(), rest.end());
        }
        out.add_term(rest, c * e);
    }
    return out;
}

JetPoly JetPoly::substitute(const JetVar& v, const JetPoly& value) const {
    JetPoly out;
    std::map<int, JetPoly> powers;
    for (const auto& [m, c] : terms_) {
        auto [e, rest] = extract(m, v);
        if (e == 0) {
            out.add_term(m, c);
            continue;
        }
        auto it = powers.find(e);
        if (it == powers.end()) it = powers.emplace(e, value.pow(static_cast<unsigned>(e))).first;
        out += term(c, rest) * it->second;
    }
    return out;
}

JetPoly JetPoly::pow(unsigned e) const {
    JetPoly out(1), base = *this;
    while (e) {
        if (e & 1u) out *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return out;
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

JetPoly& JetPoly::operator*=(const JetPoly& o) {
    JetPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(multiply(ma, mb), ca * cb);
    terms_ = std::move(out.terms_);
    return *this;
}

std::string JetPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    // Higher total degree first reads more naturally.
    std::vector<std::pair<const Monomial*, const Rational*>> order;
    for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        auto deg = [](const Monomial& m) {
            int d = 0;
            for (const auto& p : m) d += p.second;
            return d;
        };
        return deg(*a.first) > deg(*b.first);
    });
    for (const auto& [mp, cp] : order) {
        const Monomial& m = *mp;
        Rational c = *cp;
        const bool negative = c < 0;
        if (negative) c = -c;
        if (first) s += negative ? "-" : "";
        else s += negative ? " - " : " + ";
        first = false;
        std::string body;
        for (const auto& [v, e] : m) {
            if (!body.empty()) body += "*";
            body += v.str();
            if (e > 1) body += "^" + std::to_string(e);
        }
        if (body.empty()) s += to_string(c);
        else if (c == 1) s += body;
        else s += to_string(c) + "*" + body;
    }
    return s;
}

// ---------------------------------------------------------------------------

JetPoly total_derivative(const JetPoly& p, Direction dir) {
    const JetVar::Kind k = dir == Direction::T ? JetVar::Kind::T : JetVar::Kind::X;
    JetPoly out = p.partial(dir == Direction::T ? JetVar::t() : JetVar::x());
    for (const auto& v : p.variables())
        if (v.kind() == JetVar::Kind::U) out += p.partial(v) * JetPoly::var(v.differentiated(k));
    return out;
}

JetPoly total_derivative(const JetPoly& p, int nt, int nx) {
    if (nt < 0 || nx < 0) throw Error(ErrorCode::InvalidArgument, "negative derivative count");
    JetPoly out = p;
    for (int i = 0; i < nt; ++i) out = total_derivative(out, Direction::T);
    for (int i = 0; i < nx; ++i) out = total_derivative(out, Direction::X);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_point_coefficient(const JetPoly& p, const char* which) {
    for (const auto& v : p.variables())
        if (v.is_derivative())
            throw Error(ErrorCode::InvalidArgument,
                        std::string("vector field coefficient ") + which + " depends on " + v.str());
}

}  // namespace

PointVectorField::PointVectorField(JetPoly T, JetPoly X, JetPoly U) : T_(std::move(T)), X_(std::move(X)), U_(std::move(U)) {
    require_point_coefficient(T_, "T");
    require_point_coefficient(X_, "X");
    require_point_coefficient(U_, "U");
}

JetPoly PointVectorField::apply(const JetPoly& f) const {
    return T_ * f.partial(JetVar::t()) + X_ * f.partial(JetVar::x()) + U_ * f.partial(JetVar::u());
}

std::string PointVectorField::str() const {
    std::string s;
    auto add = [&s](const JetPoly& c, const char* d) {
        if (c.is_zero()) return;
        if (!s.empty()) s += " + ";
        if (c == JetPoly(1)) s += d;
        else s += "(" + c.str() + ")*" + d;
    };
    add(T_, "d_t");
    add(X_, "d_x");
    add(U_, "d_u");
    return s.empty() ? "0" : s;
}

PointVectorField operator+(const PointVectorField& a, const PointVectorField& b) {
    return {a.T_ + b.T_, a.X_ + b.X_, a.U_ + b.U_};
}

PointVectorField operator*(const JetPoly& s, const PointVectorField& v) { return {s * v.T_, s * v.X_, s * v.U_}; }

// ---------------------------------------------------------------------------

Prolongation prolong(const PointVectorField& v, int order) {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "prolongation order must be nonnegative");
    if (order > 6) throw Error(ErrorCode::OutOfRange, "prolongation order above 6 is not supported");
    Prolongation pr;
    pr[{0, 0}] = v.U();
    const JetPoly Tt = total_derivative(v.T(), Direction::T), Tx = total_derivative(v.T(), Direction::X);
    const JetPoly Xt = total_derivative(v.X(), Direction::T), Xx = total_derivative(v.X(), Direction::X);
    for (int k = 1; k <= order; ++k) {
        for (int nt = k; nt >= 0; --nt) {
            const int nx = k - nt;
            // grow from a parent by one derivative; either parent gives the same result
            const bool along_t = nt > 0;
            const MultiIndex parent = along_t ? MultiIndex{nt - 1, nx} : MultiIndex{nt, nx - 1};
            const JetPoly& phi = pr.at(parent);
            const Direction dir = along_t ? Direction::T : Direction::X;
            const JetPoly& DT = along_t ? Tt : Tx;
            const JetPoly& DX = along_t ? Xt : Xx;
            pr[{nt, nx}] = total_derivative(phi, dir) - DT * JetPoly::u(parent.first + 1, parent.second) -
                           DX * JetPoly::u(parent.first, parent.second + 1);
        }
    }
    return pr;
}

JetPoly apply_prolonged(const PointVectorField& v, const Prolongation& pr, const JetPoly& p) {
    JetPoly out = v.T() * p.partial(JetVar::t()) + v.X() * p.partial(JetVar::x());
    for (const auto& var : p.variables()) {
        if (var.kind() != JetVar::Kind::U) continue;
        auto it = pr.find({var.nt(), var.nx()});
        if (it == pr.end())
            throw Error(ErrorCode::OutOfRange, "prolongation does not reach " + var.str());
        out += it->second * p.partial(var);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Rational> isolating_coefficient(const JetPoly& delta, const JetVar& v) {
    auto c = delta.partial(v).constant_value();
    if (!c || *c == 0) return std::nullopt;
    return c;
}

JetVar choose_leading(const JetPoly& delta) {
    std::optional<JetVar> best;
    for (const auto& v : delta.variables()) {
        if (v.kind() != JetVar::Kind::U || v.nt() == 0) continue;
        if (!isolating_coefficient(delta, v)) continue;
        if (!best || v.order() > best->order() || (v.order() == best->order() && v.nt() < best->nt())) best = v;
    }
    if (!best)
        throw Error(ErrorCode::InvalidArgument,
                    "equation has no t-derivative with a constant coefficient to solve for");
    return *best;
}

}  // namespace

PdeForm::PdeForm(JetPoly delta, std::optional<JetVar> leading)
    : delta_(std::move(delta)), leading_(leading ? *leading : JetVar::u(1, 0)) {
    if (delta_.is_zero()) throw Error(ErrorCode::InvalidArgument, "equation is identically zero");
    if (!leading) leading_ = choose_leading(delta_);
    if (leading_.kind() != JetVar::Kind::U || leading_.order() == 0)
        throw Error(ErrorCode::InvalidArgument, "leading variable must be a derivative of u");
    const auto c = isolating_coefficient(delta_, leading_);
    if (!c)
        throw Error(ErrorCode::InvalidArgument,
                    "cannot isolate " + leading_.str() + ": its coefficient is not a nonzero constant");
    solved_rhs_ = JetPoly::var(leading_) - JetPoly(Rational(1) / *c) * delta_;
}

JetPoly PdeForm::reduce(const JetPoly& p) const {
    std::map<MultiIndex, JetPoly> values;  // keyed by offset J - L
    JetPoly cur = p;
    for (int iter = 0; iter < 10000; ++iter) {
        std::optional<JetVar> target;
        for (const auto& v : cur.variables()) {
            if (v.kind() != JetVar::Kind::U || v.nt() < leading_.nt() || v.nx() < leading_.nx()) continue;
            if (!target || v.order() > target->order()) target = v;
        }
        if (!target) return cur;
        const MultiIndex off{target->nt() - leading_.nt(), target->nx() - leading_.nx()};
        auto it = values.find(off);
        if (it == values.end()) it = values.emplace(off, total_derivative(solved_rhs_, off.first, off.second)).first;
        cur = cur.substitute(*target, it->second);
    }
    throw Error(ErrorCode::InvalidArgument, "elimination of " + leading_.str() + " does not terminate");
}

InvarianceResult invariance_check(const PointVectorField& v, const PdeForm& pde) {
    InvarianceResult r;
    r.raw = apply_prolonged(v, prolong(v, pde.order()), pde.delta());
    r.remainder = pde.reduce(r.raw);
    r.holds = r.remainder.is_zero();
    return r;
}

PointVectorField vf_bracket(const PointVectorField& v, const PointVectorField& w) {
    return {v.apply(w.T()) - w.apply(v.T()), v.apply(w.X()) - w.apply(v.X()), v.apply(w.U()) - w.apply(v.U())};
}

// ---------------------------------------------------------------------------

namespace {

// Splits p into (t,x,u)-monomial -> coefficient polynomial in the parameters.
std::map<Monomial, JetPoly> split_by_point_monomial(const JetPoly& p) {
    std::map<Monomial, JetPoly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial point, params;
        for (const auto& ve : m) (ve.first.kind() == JetVar::Kind::Param ? params : point).push_back(ve);
        out[point] += JetPoly::term(c, params);
    }
    return out;
}

}  // namespace

std::optional<std::vector<JetPoly>> express_in_span(const std::vector<PointVectorField>& gens,
                                                    const PointVectorField& target) {
    const std::size_t n = gens.size();
    std::map<std::pair<int, Monomial>, std::vector<JetPoly>> keyed;
    auto scatter = [&](const PointVectorField& f, std::size_t col) {
        const JetPoly* comps[3] = {&f.T(), &f.X(), &f.U()};
        for (int slot = 0; slot < 3; ++slot)
            for (auto& [m, c] : split_by_point_monomial(*comps[slot])) {
                auto& row = keyed[{slot, m}];
                if (row.empty()) row.resize(n + 1);
                row[col] += c;
            }
    };
    for (std::size_t j = 0; j < n; ++j) scatter(gens[j], j);
    scatter(target, n);

    std::vector<std::vector<JetPoly>> rows;
    for (auto& [k, r] : keyed) rows.push_back(std::move(r));

    std::vector<std::size_t> pivot_row(n);
    std::size_t next = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::optional<std::size_t> pick;
        bool symbolic = false;
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (rows[r][col].is_zero()) continue;
            auto c = rows[r][col].constant_value();
            if (c) {
                pick = r;
                break;
            }
            symbolic = true;
        }
        if (!pick) {
            if (symbolic)
                throw Error(ErrorCode::Unsupported, "elimination needs a parameter-dependent pivot");
            throw Error(ErrorCode::InvalidArgument,
                        "generators are linearly dependent (generator " + std::to_string(col + 1) + ")");
        }
        std::swap(rows[*pick], rows[next]);
        auto& prow = rows[next];
        const JetPoly inv(Rational(1) / *prow[col].constant_value());
        for (auto& e : prow) e *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next || rows[r][col].is_zero()) continue;
            const JetPoly f = rows[r][col];
            for (std::size_t k = 0; k <= n; ++k)
                if (!prow[k].is_zero()) rows[r][k] -= f * prow[k];
        }
        pivot_row[col] = next++;
    }
    for (std::size_t r = next; r < rows.size(); ++r)
        if (!rows[r][n].is_zero()) return std::nullopt;
    std::vector<JetPoly> lambda(n);
    for (std::size_t col = 0; col < n; ++col) lambda[col] = rows[pivot_row[col]][n];
    return lambda;
}

ClosureResult closure_check(const std::vector<PointVectorField>& gens) {
    ClosureResult res;
    const std::size_t n = gens.size();
    res.dimension = n;
    // independence is checked by expressing the zero field
    if (n > 0) express_in_span(gens, PointVectorField(0, 0, 0));
    std::vector<std::vector<std::vector<JetPoly>>> table(n, std::vector<std::vector<JetPoly>>(n, std::vector<JetPoly>(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const PointVectorField b = vf_bracket(gens[i], gens[j]);
            auto lambda = express_in_span(gens, b);
            if (!lambda) {
                res.closed = false;
                res.witness = {i, j};
                res.witness_bracket = b;
                return res;
            }
            for (std::size_t k = 0; k < n; ++k) {
                table[i][j][k] = (*lambda)[k];
                table[j][i][k] = -(*lambda)[k];
            }
        }
    res.closed = true;
    res.structure = std::move(table);
    return res;
}

}  // namespace geoflow::jet
