#include "geoflow/catalog.hpp"

#include "geoflow/error.hpp"

#include <cctype>

namespace geoflow::jet {

namespace {

JetPoly c(int i) { return JetPoly::param("c" + std::to_string(i)); }
JetPoly eps() { return JetPoly::param("eps"); }
JetPoly r(long num, long den) { return JetPoly(Rational(num, den)); }

PointVectorField dt() { return {1, 0, 0}; }
PointVectorField dx() { return {0, 1, 0}; }

void require_analysed(Equation eq) {
    if (eq == Equation::Hopf)
        throw Error(ErrorCode::Unsupported,
                    "the Hopf equation is excluded from symmetry analysis: its generator coefficients are only "
                    "known implicitly");
}

bool is_free_constant(const JetVar& v) {
    const std::string& n = v.name();
    if (v.kind() != JetVar::Kind::Param || n.size() < 2 || n[0] != 'c') return false;
    for (std::size_t i = 1; i < n.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(n[i]))) return false;
    return true;
}

}  // namespace

JetPoly equation_delta(Equation eq) {
    const auto cfg = EquationConfig::make(eq);
    const JetPoly a2(static_cast<long>(cfg.metric.alpha() * cfg.metric.alpha()));
    const JetPoly b2(static_cast<long>(cfg.metric.beta() * cfg.metric.beta()));
    const JetPoly u = JetPoly::u(), ut = JetPoly::u(1, 0), ux = JetPoly::u(0, 1), uxx = JetPoly::u(0, 2),
                  uxxx = JetPoly::u(0, 3), utxx = JetPoly::u(1, 2);
    JetPoly d = a2 * ut - b2 * utxx + JetPoly(3) * a2 * u * ux - JetPoly(2) * b2 * ux * uxx - b2 * u * uxxx;
    if (cfg.group == Group::Virasoro) d += eps() * uxxx;
    return d;
}

PdeForm equation_pde(Equation eq) { return PdeForm(equation_delta(eq)); }

PdeForm hopf_transport_pde() { return PdeForm(JetPoly::u(1, 0) + JetPoly::u() * JetPoly::u(0, 1)); }

std::string to_string(SymmetryKind k) {
    switch (k) {
    case SymmetryKind::Scaling: return "scaling";
    case SymmetryKind::TimeTranslation: return "time translation";
    case SymmetryKind::SpaceTranslation: return "space translation";
    case SymmetryKind::GalileanBoost: return "Galilean boost";
    case SymmetryKind::GeneralisedGalileanBoost: return "generalised Galilean boost";
    }
    return "?";
}

std::vector<NamedGenerator> spanning_generators(Equation eq, const JetPoly& F1, const JetPoly& F2) {
    require_analysed(eq);
    const JetPoly t = JetPoly::t(), x = JetPoly::x(), u = JetPoly::u();
    using K = SymmetryKind;
    for (const JetPoly* F : {&F1, &F2})
        for (const auto& v : F->variables())
            if (v.kind() != JetVar::Kind::T && v.kind() != JetVar::Kind::Param)
                throw Error(ErrorCode::InvalidArgument, "F1 and F2 may depend on t only");
    auto hs_family = [&](PointVectorField v1) {
        const JetVar tv = JetVar::t();
        const JetPoly F1t = F1.partial(tv);
        return std::vector<NamedGenerator>{
            {"v1", K::Scaling, std::move(v1)},
            {"v2", K::TimeTranslation, dt()},
            {"v3", K::Scaling, PointVectorField(F1, x * F1t, x * F1t.partial(tv))},
            {"v4", K::GeneralisedGalileanBoost, PointVectorField(0, F2, F2.partial(tv))},
        };
    };
    switch (eq) {
    case Equation::CamassaHolm:
        return {{"v1", K::Scaling, PointVectorField(-t, 0, u)},
                {"v2", K::TimeTranslation, dt()},
                {"v3", K::SpaceTranslation, dx()}};
    case Equation::HunterSaxton: return hs_family(PointVectorField(-t, 0, u));
    case Equation::KdV:
        return {{"v1", K::SpaceTranslation, dx()},
                {"v2", K::TimeTranslation, dt()},
                {"v3", K::GalileanBoost, PointVectorField(0, JetPoly(3) * t, 1)},
                {"v4", K::Scaling, PointVectorField(JetPoly(3) * t, x, JetPoly(-2) * u)}};
    case Equation::DispersiveCH:
        return {{"v1", K::Scaling, PointVectorField(-t, r(3, 2) * eps() * t, u + r(1, 2) * eps())},
                {"v2", K::TimeTranslation, dt()},
                {"v3", K::SpaceTranslation, dx()}};
    case Equation::DispersiveHS: return hs_family(PointVectorField(-t, 0, u - eps()));
    case Equation::Hopf: break;
    }
    throw Error(ErrorCode::Unsupported, "no generators for this equation");
}

PointVectorField general_generator(Equation eq) {
    require_analysed(eq);
    const JetPoly t = JetPoly::t(), x = JetPoly::x(), u = JetPoly::u();
    switch (eq) {
    case Equation::CamassaHolm: return {-c(1) * t + c(2), c(3), c(1) * u};
    case Equation::HunterSaxton: return {c(3) * t - c(1) * t + c(2), c(3) * x + c(4), c(1) * u};
    case Equation::KdV:
        return {c(2) + JetPoly(3) * c(4) * t, c(1) + JetPoly(3) * c(3) * t + c(4) * x, JetPoly(-2) * c(4) * u + c(3)};
    case Equation::DispersiveCH:
        return {-c(1) * t + c(2), r(3, 2) * c(1) * eps() * t + c(3), c(1) * u + r(1, 2) * c(1) * eps()};
    case Equation::DispersiveHS: return {c(3) * t - c(1) * t + c(2), c(3) * x + c(4), c(1) * u - c(1) * eps()};
    case Equation::Hopf: break;
    }
    throw Error(ErrorCode::Unsupported, "no generator for this equation");
}

std::vector<PointVectorField> sign_flip_mutants(const PointVectorField& v) {
    struct Ref {
        int slot;
        Monomial m;
        Rational coef;
    };
    // group terms of all three components by their free-constant monomial
    std::map<Monomial, std::vector<Ref>> groups;
    const JetPoly* comps[3] = {&v.T(), &v.X(), &v.U()};
    for (int slot = 0; slot < 3; ++slot)
        for (const auto& [m, coef] : comps[slot]->terms()) {
            Monomial key;
            for (const auto& ve : m)
                if (is_free_constant(ve.first)) key.push_back(ve);
            groups[key].push_back({slot, m, coef});
        }
    std::vector<PointVectorField> out;
    for (const auto& [key, refs] : groups) {
        if (refs.size() < 2) continue;
        for (const auto& ref : refs) {
            JetPoly parts[3] = {v.T(), v.X(), v.U()};
            parts[ref.slot] -= JetPoly::term(2 * ref.coef, ref.m);
            out.emplace_back(parts[0], parts[1], parts[2]);
        }
    }
    return out;
}

}  // namespace geoflow::jet
