#include "geoflow/checks.hpp"

#include "geoflow/catalog.hpp"
#include "geoflow/error.hpp"
#include "geoflow/geodesic.hpp"
#include "geoflow/jet.hpp"
#include "geoflow/lie.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace geoflow {

namespace {

using std::numbers::pi;

constexpr std::uint64_t kDefaultSeed = 20240229ULL;

struct Sampler {
    std::mt19937_64 rng;
    PeriodicGrid grid;

    GridField trig(int degree) {
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        std::vector<double> a(degree + 1), b(degree + 1);
        for (int k = 0; k <= degree; ++k) {
            a[k] = coef(rng);
            b[k] = coef(rng);
        }
        return GridField::sample(grid, [&](double x) {
            double s = a[0];
            for (int k = 1; k <= degree; ++k) s += a[k] * std::cos(k * x) + b[k] * std::sin(k * x);
            return s;
        });
    }

    // x + c sin(x + d), |c| <= 0.3
    CircleDiffeo diffeo() {
        std::uniform_real_distribution<double> amp(-0.3, 0.3), phase(0.0, 2 * pi);
        const double c = amp(rng), d = phase(rng);
        return CircleDiffeo::from_lift(grid, [c, d](double x) { return x + c * std::sin(x + d); });
    }
};

PropertyResult judge(std::string name, double residual, double tol, std::size_t samples, std::string detail = {}) {
    return {std::move(name), residual < tol, residual, tol, samples, std::move(detail)};
}

double lift_gap(const CircleDiffeo& a, const CircleDiffeo& b) {
    double worst = 0.0;
    for (std::size_t j = 0; j < a.lift_values().size(); ++j)
        worst = std::max(worst, std::abs(a.lift_values()[j] - b.lift_values()[j]));
    return worst;
}

std::vector<PropertyResult> diffeo_actions(Sampler& s) {
    std::vector<PropertyResult> out;
    double assoc = 0.0, inv = 0.0, hom = 0.0, dual = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto a = s.diffeo(), b = s.diffeo(), c = s.diffeo();
        assoc = std::max(assoc, lift_gap(a.compose(b).compose(c), a.compose(b.compose(c))));
        inv = std::max(inv, lift_gap(a.compose(a.inverse()), CircleDiffeo::identity(s.grid)));
        const auto u = s.trig(5), m = s.trig(5);
        hom = std::max(hom, (adjoint_group_action(a, adjoint_group_action(b, u)) -
                             adjoint_group_action(a.compose(b), u))
                                .max_abs());
        const auto co = coadjoint_group_action(a, {m, 0.0});
        dual = std::max(dual, std::abs(pairing(co.m, u) - pairing(m, adjoint_group_action(a, u))));
    }
    out.push_back(judge("composition is associative", assoc, 1e-10, 10));
    out.push_back(judge("phi o phi^-1 = id", inv, 1e-10, 10));
    out.push_back(judge("Ad is a homomorphism", hom, 1e-8, 10));
    out.push_back(judge("coadjoint action is dual to Ad", dual, 1e-9, 10));

    out.push_back(judge("S(identity) = 0", schwarzian(CircleDiffeo::identity(s.grid)).max_abs(), 1e-13, 1));
    // third derivative of round-off in the periodic part, amplified by k^3
    out.push_back(judge("S(rotation) = 0", schwarzian(CircleDiffeo::rotation(s.grid, 0.9)).max_abs(), 1e-9, 1));

    std::uniform_real_distribution<double> small(-0.05, 0.05), any(-1.0, 1.0);
    double mob = 0.0, chain = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto phi = s.diffeo(), psi = s.diffeo();
        const auto p1 = phi.derivative(1), p2 = phi.derivative(2), p3 = phi.derivative(3);
        const auto sphi = schwarzian(phi);
        // M(y) = y / (c y + d) composed with phi, chain rule by hand
        const double c = small(s.rng), d = 1.0 + 0.2 * any(s.rng);
        const std::size_t n = s.grid.size();
        std::vector<double> d1(n), d2(n), d3(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double q = c * phi.lift_values()[j] + d;
            const double m1 = d / (q * q), m2 = -2 * c * d / (q * q * q), m3 = 6 * c * c * d / (q * q * q * q);
            d1[j] = m1 * p1[j];
            d2[j] = m2 * p1[j] * p1[j] + m1 * p2[j];
            d3[j] = m3 * p1[j] * p1[j] * p1[j] + 3 * m2 * p1[j] * p2[j] + m1 * p3[j];
        }
        const auto sm = schwarzian_from_jets(d1, d2, d3);
        for (std::size_t j = 0; j < n; ++j) mob = std::max(mob, std::abs(sm[j] - sphi[j]));

        // S(phi o psi) = (S(phi) o psi) psi_x^2 + S(psi)
        const auto lhs = schwarzian(phi.compose(psi));
        const auto at = trig_interpolate(sphi, psi.lift_values());
        const auto q1 = psi.derivative(1), spsi = schwarzian(psi);
        for (std::size_t j = 0; j < n; ++j)
            chain = std::max(chain, std::abs(lhs[j] - (at[j] * q1[j] * q1[j] + spsi[j])));
    }
    out.push_back(judge("Schwarzian is Moebius invariant", mob, 1e-6, 10));
    out.push_back(judge("Schwarzian chain rule", chain, 1e-6, 10));
    return out;
}

std::vector<PropertyResult> virasoro(Sampler& s) {
    double dual = 0.0, jac_vect = 0.0, jac_vir = 0.0, anti = 0.0, gf_anti = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto u = s.trig(6), v = s.trig(6), w = s.trig(6), m = s.trig(6);
        dual = std::max(dual, std::abs(pairing(ad_star(u, m), v) + pairing(m, ad(u, v))));
        jac_vect = std::max(jac_vect, (ad(ad(u, v), w) + ad(ad(v, w), u) + ad(ad(w, u), v)).max_abs());
        const VirasoroVector x{u, 0.4}, y{v, -1.3}, z{w, 2.0};
        const auto j1 = vir_bracket(vir_bracket(x, y), z), j2 = vir_bracket(vir_bracket(y, z), x),
                   j3 = vir_bracket(vir_bracket(z, x), y);
        jac_vir = std::max({jac_vir, (j1.u + j2.u + j3.u).max_abs(), std::abs(j1.a + j2.a + j3.a)});
        const auto xy = vir_bracket(x, y), yx = vir_bracket(y, x);
        anti = std::max({anti, (xy.u + yx.u).max_abs(), std::abs(xy.a + yx.a)});
        gf_anti = std::max(gf_anti, std::abs(gelfand_fuchs(u, v) + gelfand_fuchs(v, u)));
    }
    return {judge("<ad*_u m, v> + <m, ad_u v> = 0", dual, 1e-10, 50),
            judge("Jacobi identity on Vect(S^1)", jac_vect, 1e-9, 50),
            judge("Jacobi identity on the Virasoro algebra", jac_vir, 1e-9, 50),
            judge("Virasoro bracket is antisymmetric", anti, 1e-11, 50),
            judge("Gel'fand-Fuchs form is antisymmetric", gf_anti, 1e-10, 50)};
}

std::vector<PropertyResult> cocycles(Sampler& s) {
    double gf = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto u = s.trig(6), v = s.trig(6), w = s.trig(6);
        gf = std::max(gf, std::abs(gelfand_fuchs(ad(u, v), w) + gelfand_fuchs(ad(w, u), v) + gelfand_fuchs(ad(v, w), u)));
    }
    double bt = 0.0, norm = 0.0;
    const auto id = CircleDiffeo::identity(s.grid);
    for (int i = 0; i < 20; ++i) {
        const auto a = s.diffeo(), b = s.diffeo(), c = s.diffeo();
        bt = std::max(bt, std::abs(bott_thurston(a.compose(b), c) + bott_thurston(a, b) - bott_thurston(a, b.compose(c)) -
                                   bott_thurston(b, c)));
        norm = std::max({norm, std::abs(bott_thurston(id, a)), std::abs(bott_thurston(a, id))});
    }
    return {judge("Gel'fand-Fuchs 2-cocycle identity", gf, 1e-9, 50),
            judge("Bott-Thurston group 2-cocycle identity", bt, 1e-7, 20),
            judge("Bott-Thurston vanishes at the identity", norm, 1e-12, 20)};
}

constexpr Equation kAnalysed[] = {Equation::CamassaHolm, Equation::HunterSaxton, Equation::KdV, Equation::DispersiveCH,
                                  Equation::DispersiveHS};

std::vector<PropertyResult> invariance() {
    std::vector<PropertyResult> out;
    for (Equation eq : kAnalysed) {
        const auto pde = jet::equation_pde(eq);
        std::size_t mutants = 0, survived = 0;
        for (const auto& g : jet::spanning_generators(eq)) {
            const auto r = jet::invariance_check(g.field, pde);
            out.push_back(judge(std::string(short_name(eq)) + "." + g.label + " invariance",
                                static_cast<double>(r.remainder.size()), 0.5, 1,
                                "remainder " + r.remainder.str()));
            for (const auto& m : jet::sign_flip_mutants(g.field)) {
                ++mutants;
                survived += jet::invariance_check(m, pde).holds;
            }
        }
        for (const auto& m : jet::sign_flip_mutants(jet::general_generator(eq))) {
            ++mutants;
            survived += jet::invariance_check(m, pde).holds;
        }
        out.push_back(judge(std::string(short_name(eq)) + " sign-flip mutants rejected", static_cast<double>(survived), 0.5,
                            mutants, std::to_string(mutants - survived) + "/" + std::to_string(mutants) + " rejected"));
    }
    return out;
}

std::string structure_text(const jet::ClosureResult& r) {
    std::ostringstream os;
    const std::size_t d = r.dimension;
    bool first = true;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            std::string rhs;
            for (std::size_t k = 0; k < d; ++k) {
                const auto& c = r.structure[i][j][k];
                if (c.is_zero()) continue;
                if (!rhs.empty()) rhs += " + ";
                rhs += "(" + c.str() + ")*v" + std::to_string(k + 1);
            }
            if (rhs.empty()) continue;
            os << (first ? "" : "; ") << "[v" << i + 1 << ",v" << j + 1 << "] = " << rhs;
            first = false;
        }
    return first ? "abelian" : os.str();
}

std::vector<PropertyResult> closure() {
    std::vector<PropertyResult> out;
    const std::size_t expected[] = {3, 4, 4, 3, 4};
    for (std::size_t e = 0; e < 5; ++e) {
        std::vector<jet::PointVectorField> f;
        for (const auto& g : jet::spanning_generators(kAnalysed[e])) f.push_back(g.field);
        const auto r = jet::closure_check(f);
        const bool ok = r.closed && r.dimension == expected[e];
        out.push_back({std::string(short_name(kAnalysed[e])) + " algebra closes", ok, ok ? 0.0 : 1.0, 0.5, 1,
                       "dimension " + std::to_string(r.dimension) + ": " + structure_text(r)});
    }
    std::vector<jet::PointVectorField> hs;
    for (const auto& g : jet::spanning_generators(Equation::HunterSaxton, jet::JetPoly::t().pow(2))) hs.push_back(g.field);
    const auto r = jet::closure_check(hs);
    std::string detail = r.closed ? "closed" : "not closed";
    if (r.witness)
        detail += ", witness [v" + std::to_string(r.witness->first + 1) + ",v" + std::to_string(r.witness->second + 1) +
                  "] = " + r.witness_bracket->str();
    const bool ok = !r.closed && r.witness.has_value();
    out.push_back({"hs with F1 = t^2 does not close", ok, ok ? 0.0 : 1.0, 0.5, 1, detail});
    return out;
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"diffeo-actions", "virasoro", "cocycles", "invariance", "closure"};
    return names;
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("GEOFLOW_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0') return v;
    }
    return kDefaultSeed;
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed) {
    SuiteReport rep{std::string(name), seed, {}};
    Sampler s{std::mt19937_64(seed), make_grid(128)};
    if (name == "diffeo-actions") rep.properties = diffeo_actions(s);
    else if (name == "virasoro") rep.properties = virasoro(s);
    else if (name == "cocycles") rep.properties = cocycles(s);
    else if (name == "invariance") rep.properties = invariance();
    else if (name == "closure") rep.properties = closure();
    else {
        std::string list;
        for (const auto& n : suite_names()) list += (list.empty() ? "" : ", ") + n;
        throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(name) + "' (expected one of " + list + ")");
    }
    return rep;
}

}  // namespace geoflow
