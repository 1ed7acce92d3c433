#include "geoflow/error.hpp"
#include "geoflow/symmetry.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace geoflow;

namespace {

const Equation kAnalysed[] = {Equation::CamassaHolm, Equation::HunterSaxton, Equation::KdV, Equation::DispersiveCH,
                              Equation::DispersiveHS};

GridField smooth_data(const PeriodicGrid& g) {
    return GridField::sample(g, [](double x) { return std::sin(x) + 0.3 * std::cos(2.0 * x); });
}

// Evaluates the rule through pointwise interpolation rather than phase shifts.
GridField rule_by_interpolation(const SolutionMap& m, double t, const GridField& f) {
    const PeriodicGrid& g = f.grid();
    std::vector<double> xs(g.size());
    for (std::size_t j = 0; j < xs.size(); ++j) xs[j] = g.point(j) + m.drift * t + m.shift;
    auto vals = trig_interpolate(f, xs);
    for (double& v : vals) v = m.amplitude * v + m.offset;
    return GridField(g, std::move(vals));
}

double max_snapshot_diff(const Trajectory& a, const Trajectory& b) {
    REQUIRE(a.times.size() == b.times.size());
    double d = 0.0;
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        CHECK(a.times[k] == doctest::Approx(b.times[k]).epsilon(1e-12));
        d = std::max(d, testing::max_diff(a.snapshots[k], b.snapshots[k]));
    }
    return d;
}

}  // namespace

TEST_CASE("symmetry lists") {
    const std::map<Equation, std::size_t> counts = {{Equation::CamassaHolm, 3},
                                                    {Equation::HunterSaxton, 4},
                                                    {Equation::KdV, 4},
                                                    {Equation::DispersiveCH, 3},
                                                    {Equation::DispersiveHS, 4}};
    for (auto [eq, n] : counts) {
        const auto specs = list_symmetries(EquationConfig::make(eq));
        CHECK(specs.size() == n);
        for (const auto& s : specs) {
            const bool rescales_x = s.generator_id == "kdv.v4" || s.generator_id == "hs.v3" || s.generator_id == "dhs.v3";
            CHECK(s.grid_compatible == !rescales_x);
            CHECK(jet::invariance_check(s.generator, jet::equation_pde(eq)).holds);
            CHECK_FALSE(s.group_action.empty());
            CHECK_FALSE(s.solution_rule.empty());
        }
    }
    try {
        list_symmetries(EquationConfig::make(Equation::Hopf));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Unsupported);
        CHECK(std::string(e.what()).find("excluded") != std::string::npos);
    }
    const auto kdv = EquationConfig::make(Equation::KdV);
    CHECK(find_symmetry(kdv, "v3").generator_id == "kdv.v3");
    CHECK(find_symmetry(kdv, "kdv.v1").kind == jet::SymmetryKind::SpaceTranslation);
    CHECK_THROWS_AS(find_symmetry(kdv, "v9"), Error);
    CHECK_THROWS_AS(find_symmetry(kdv, "v4").solution_map(0.1), Error);
}

TEST_CASE("transform: worked examples") {
    const PeriodicGrid g(128);
    const auto ch = EquationConfig::make(Equation::CamassaHolm);
    const Trajectory a = simulate(ch, GridField::sample(g, [](double x) { return std::sin(x); }), 0.05);

    const Trajectory shifted = transform_solution(find_symmetry(ch, "v3"), 0.7, a);
    CHECK(testing::max_diff(shifted.snapshots[0], GridField::sample(g, [](double x) { return std::sin(x - 0.7); })) <
          1e-13);

    for (const auto& spec : list_symmetries(ch)) {
        const Trajectory same = transform_solution(spec, 0.0, a);
        CHECK(max_snapshot_diff(same, a) < 1e-12);
    }

    const auto kdv = EquationConfig::make(Equation::KdV);
    const Trajectory zero = simulate(kdv, GridField::constant(g, 0.0), 0.05);
    const Trajectory boosted = transform_solution(find_symmetry(kdv, "v3"), 0.5, zero);
    for (const auto& s : boosted.snapshots) CHECK(testing::max_diff(s, GridField::constant(g, 0.5)) < 1e-15);
}

TEST_CASE("transform: spectral shifts agree with interpolation") {
    const PeriodicGrid g(64);
    for (Equation eq : kAnalysed) {
        const auto cfg = EquationConfig::make(eq);
        const Trajectory a = simulate(cfg, smooth_data(g), 0.02, {.dt = 2e-3});
        for (const auto& spec : list_symmetries(cfg)) {
            if (!spec.grid_compatible) continue;
            const double s = -0.004;
            const SolutionMap m = spec.solution_map(s);
            const Trajectory tr = transform_solution(spec, s, a);
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                const std::size_t src = k + (a.times.size() - tr.times.size());
                CHECK(tr.times[k] * m.time_scale + m.time_offset == doctest::Approx(a.times[src]));
                CHECK(testing::max_diff(tr.snapshots[k], rule_by_interpolation(m, tr.times[k], a.snapshots[src])) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("transform: group law") {
    const PeriodicGrid g(64);
    for (Equation eq : kAnalysed) {
        const auto cfg = EquationConfig::make(eq, 0.7);
        const Trajectory a = simulate(cfg, smooth_data(g), 0.1, {.dt = 1e-2});
        for (const auto& spec : list_symmetries(cfg)) {
            if (!spec.grid_compatible) continue;
            INFO(spec.generator_id);
            // time translations by multiples of the step keep the snapshots aligned
            const double s1 = -0.02, s2 = -0.03;
            const Trajectory two = transform_solution(spec, s1, transform_solution(spec, s2, a));
            const Trajectory one = transform_solution(spec, s1 + s2, a);
            CHECK(max_snapshot_diff(two, one) < 1e-10);
        }
    }
}

TEST_CASE("transform: range errors") {
    const PeriodicGrid g(64);
    const auto cfg = EquationConfig::make(Equation::CamassaHolm);
    const Trajectory a = simulate(cfg, smooth_data(g), 0.05, {.dt = 1e-2});
    CHECK_THROWS_AS(transform_solution(find_symmetry(cfg, "v2"), -1.0, a), Error);
    CHECK_THROWS_AS(symmetry_consistency_test(find_symmetry(cfg, "v2"), 0.1, smooth_data(g), 0.1), Error);
    CHECK_THROWS_AS(symmetry_consistency_test(find_symmetry(EquationConfig::make(Equation::HunterSaxton), "v3"), -0.1,
                                              smooth_data(g), 0.1),
                    Error);
}

TEST_CASE("consistency: worked examples") {
    const PeriodicGrid g(256);
    const GridField sinx = GridField::sample(g, [](double x) { return std::sin(x); });
    {
        const auto cfg = EquationConfig::make(Equation::CamassaHolm);
        const auto rep = symmetry_consistency_test(find_symmetry(cfg, "v3"), 1.0, sinx, 0.5);
        CHECK(rep.discrepancy < 1e-6);
        CHECK(rep.residual_times.size() == 3);
    }
    {
        const auto cfg = EquationConfig::make(Equation::KdV);
        const auto rep = symmetry_consistency_test(find_symmetry(cfg, "v3"), 0.3, smooth_data(g), 0.5);
        CHECK(rep.discrepancy < 1e-5);
        CHECK_FALSE(rep.blew_up);
    }
    {
        const auto cfg = EquationConfig::make(Equation::DispersiveHS);
        const auto rep = symmetry_consistency_test(find_symmetry(cfg, "v1"), 0.2, smooth_data(g), 0.5);
        CHECK(rep.discrepancy < 1e-5);
        CHECK(rep.original.times.back() == doctest::Approx(0.5 * std::exp(0.2)));
        for (std::size_t i = 0; i < rep.residual_times.size(); ++i)
            CHECK(rep.transformed_residuals[i] <= 5.0 * rep.original_residuals[i]);
    }
}

TEST_CASE("consistency: time translation is exact") {
    const PeriodicGrid g(128);
    const auto cfg = EquationConfig::make(Equation::CamassaHolm);
    const auto rep = symmetry_consistency_test(find_symmetry(cfg, "v2"), -0.1, smooth_data(g), 0.2, {.dt = 1e-2});
    CHECK(rep.discrepancy < 1e-13);
    CHECK(rep.original.times.front() == doctest::Approx(0.1));
}

TEST_CASE("consistency: printed KdV boost rule is not a symmetry of the discrete flow") {
    // f(t, x - s) + s without the moving frame: the discrepancy stays O(s).
    const PeriodicGrid g(128);
    const auto cfg = EquationConfig::make(Equation::KdV);
    const GridField u0 = smooth_data(g);
    const double s = 0.3, t_end = 0.2;
    const Trajectory a = simulate(cfg, u0, t_end);
    GridField b0 = translate(u0, s);
    b0 += s;
    const Trajectory b = simulate(cfg, b0, t_end);
    GridField printed = translate(a.snapshots.back(), s);
    printed += s;
    CHECK(testing::max_diff(printed, b.snapshots.back()) > 1e-2);
    GridField moving = translate(a.snapshots.back(), s + 3.0 * s * t_end);
    moving += s;
    CHECK(testing::max_diff(moving, b.snapshots.back()) < 1e-6);
}
