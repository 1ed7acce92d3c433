#include "geoflow/error.hpp"
#include "geoflow/spectral.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>
#include <numbers>

using namespace geoflow;
using geoflow::testing::make_rng;
using geoflow::testing::random_trig;
using std::numbers::pi;

namespace {

// Direct O(n^2) DFT with the same normalisation as analyze().
std::vector<std::complex<double>> direct_dft(const GridField& f) {
    const std::size_t n = f.size();
    std::vector<std::complex<double>> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += f[j] * std::polar(1.0, -2.0 * pi * static_cast<double>(i * j % n) / static_cast<double>(n));
        c[i] = acc / static_cast<double>(n);
    }
    return c;
}

}  // namespace

TEST_CASE("make_grid validates and spaces points uniformly") {
    const auto g = make_grid(8);
    CHECK(g.size() == 8);
    for (std::size_t j = 0; j < 8; ++j) CHECK(g.point(j) == doctest::Approx(j * pi / 4).epsilon(1e-15));
    CHECK(make_grid(64, 1.0).spacing() == doctest::Approx(1.0 / 64));
    CHECK_THROWS_AS(make_grid(7), Error);
    CHECK_THROWS_AS(make_grid(6), Error);
    CHECK_THROWS_AS(make_grid(16, 0.0), Error);
    CHECK_THROWS_AS(make_grid(16, -1.0), Error);
}

TEST_CASE("GridField rejects non-finite and mis-sized data") {
    const auto g = make_grid(8);
    CHECK_THROWS_AS(GridField(g, std::vector<double>(7, 0.0)), Error);
    CHECK_THROWS_AS(GridField(g, std::vector<double>(8, std::nan(""))), Error);
    CHECK_THROWS_AS(GridField(g) + GridField(make_grid(16)), Error);
}

TEST_CASE("analyze: constant and single modes") {
    const auto g = make_grid(32);
    const Spectrum c = analyze(GridField::constant(g, 1.0));
    CHECK(std::abs(c.at(0) - 1.0) < 1e-15);
    for (int k = -16; k < 16; ++k)
        if (k != 0) CHECK(std::abs(c.at(k)) < 1e-15);

    const Spectrum s = analyze(GridField::sample(g, [](double x) { return std::sin(x); }));
    CHECK(std::abs(s.at(1) - std::complex<double>(0, -0.5)) < 1e-15);
    CHECK(std::abs(s.at(-1) - std::complex<double>(0, 0.5)) < 1e-15);
    for (int k = -16; k < 16; ++k)
        if (std::abs(k) != 1) CHECK(std::abs(s.at(k)) < 1e-15);
    CHECK_THROWS_AS((void)s.at(16), Error);
}

TEST_CASE("analyze agrees with a direct DFT; round trip and Parseval hold for every even n") {
    auto rng = make_rng(1);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (std::size_t n = 8; n <= 512; n += 2) {
        const auto g = make_grid(n);
        std::vector<double> v(n);
        for (auto& x : v) x = d(rng);
        const GridField f(g, v);
        const Spectrum s = analyze(f);
        if (n <= 128 || n % 64 == 0) {
            const auto ref = direct_dft(f);
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(ref[i] - s.raw()[i]));
            CHECK(err < 1e-13);
        }
        const GridField back = synthesize(s);
        CHECK(testing::max_diff(back, f) / f.max_abs() < 1e-12);
        double e_phys = 0.0, e_spec = 0.0;
        for (double x : v) e_phys += x * x;
        for (auto c : s.raw()) e_spec += std::norm(c);
        CHECK(std::abs(e_phys / static_cast<double>(n) - e_spec) < 1e-12 * e_spec);
        // Hermitian symmetry of a real field
        for (int k = 1; k < static_cast<int>(n / 2); ++k) CHECK(std::abs(s.at(-k) - std::conj(s.at(k))) < 1e-13);
    }
}

TEST_CASE("spectral_derivative is exact on trigonometric polynomials") {
    const auto g = make_grid(32);
    const auto sinx = GridField::sample(g, [](double x) { return std::sin(x); });
    const auto cosx = GridField::sample(g, [](double x) { return std::cos(x); });
    CHECK(testing::max_diff(spectral_derivative(sinx, 1), cosx) < 1e-12);
    CHECK(testing::max_diff(spectral_derivative(sinx, 3), -cosx) < 1e-12);
    CHECK(spectral_derivative(GridField::constant(g, 3.0), 1).max_abs() < 1e-15);
    CHECK(spectral_derivative(GridField::constant(g, 3.0), 4).max_abs() < 1e-15);
    CHECK(testing::max_diff(spectral_derivative(sinx, 0), sinx) == 0.0);

    // Nyquist mode: odd derivatives drop it, even ones keep it.
    const auto nyq = GridField::sample(g, [](double x) { return std::cos(16 * x); });
    CHECK(spectral_derivative(nyq, 1).max_abs() < 1e-12);
    CHECK(testing::max_diff(spectral_derivative(nyq, 2), -256.0 * nyq) < 1e-9);

    // non-2pi circumference
    const auto h = make_grid(64, 1.0);
    const auto s = GridField::sample(h, [](double x) { return std::sin(2 * pi * 3 * x); });
    const auto ds = GridField::sample(h, [](double x) { return 6 * pi * std::cos(2 * pi * 3 * x); });
    CHECK(testing::max_diff(spectral_derivative(s, 1), ds) < 1e-11);
}

TEST_CASE("derivative composition and zero-integral properties") {
    auto rng = make_rng(2);
    for (std::size_t n : {8u, 16u, 64u, 128u, 256u, 512u}) {
        const auto g = make_grid(n);
        const auto f = random_trig(g, static_cast<int>(n / 2) - 1, rng);
        const auto twice = spectral_derivative(spectral_derivative(f, 1), 1);
        const auto direct = spectral_derivative(f, 2);
        CHECK(testing::max_diff(twice, direct) <= 1e-11 * std::max(1.0, direct.max_abs()));
        CHECK(std::abs(integrate(spectral_derivative(f, 1))) < 1e-12 * static_cast<double>(n));
    }
}

TEST_CASE("trig_interpolate reproduces samples and band-limited functions") {
    const auto g = make_grid(32);
    const auto s = GridField::sample(g, [](double x) { return std::sin(x); });
    const double t[] = {pi / 3, -pi / 3, 7.0 * pi / 3 + 2 * pi};
    const auto v = trig_interpolate(s, t);
    CHECK(std::abs(v[0] - std::sin(pi / 3)) < 1e-12);
    CHECK(std::abs(v[1] + std::sin(pi / 3)) < 1e-12);
    CHECK(std::abs(v[2] - std::sin(pi / 3)) < 1e-12);

    auto rng = make_rng(3);
    for (std::size_t n = 8; n <= 512; n *= 2) {
        const auto gg = make_grid(n);
        const auto f = random_trig(gg, static_cast<int>(n / 2) - 1, rng);
        const auto pts = gg.points();
        const auto back = trig_interpolate(f, pts);
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) err = std::max(err, std::abs(back[j] - f[j]));
        CHECK(err < 1e-12 * std::max(1.0, f.max_abs()));
    }
}

TEST_CASE("trig_interpolate is linear and converges spectrally under refinement") {
    auto rng = make_rng(4);
    const auto g = make_grid(64);
    const auto a = random_trig(g, 10, rng), b = random_trig(g, 10, rng);
    std::uniform_real_distribution<double> d(0.0, 2 * pi);
    std::vector<double> xs(100);
    for (auto& x : xs) x = d(rng);
    const auto va = trig_interpolate(a, xs), vb = trig_interpolate(b, xs), vab = trig_interpolate(2.0 * a - b, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(vab[i] - (2 * va[i] - vb[i])) < 1e-12);

    auto ecos = [](double x) { return std::exp(std::cos(x)); };
    double prev = 1.0;
    for (std::size_t n : {8u, 16u, 32u}) {
        const auto f = GridField::sample(make_grid(n), ecos);
        const auto v = trig_interpolate(f, xs);
        double err = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) err = std::max(err, std::abs(v[i] - ecos(xs[i])));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-13);
    // n=64 against n=128, evaluated at the same random targets
    const auto v64 = trig_interpolate(GridField::sample(make_grid(64), ecos), xs);
    const auto v128 = trig_interpolate(GridField::sample(make_grid(128), ecos), xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(v64[i] - v128[i]) < 1e-13);
}

TEST_CASE("translate shifts band-limited fields exactly") {
    const auto g = make_grid(32);
    const auto f = GridField::sample(g, [](double x) { return std::sin(x) + 0.5 * std::cos(3 * x); });
    const auto shifted = GridField::sample(g, [](double x) { return std::sin(x - 0.7) + 0.5 * std::cos(3 * (x - 0.7)); });
    CHECK(testing::max_diff(translate(f, 0.7), shifted) < 1e-13);
    CHECK(testing::max_diff(translate(translate(f, 0.3), 0.4), translate(f, 0.7)) < 1e-13);
}

TEST_CASE("dealias applies the two-thirds rule") {
    const auto g = make_grid(32);
    Spectrum s(g, std::vector<std::complex<double>>(32, 1.0));
    const Spectrum d = dealias(s);
    CHECK(d.at(12) == std::complex<double>(0.0));
    CHECK(d.at(-12) == std::complex<double>(0.0));
    CHECK(d.at(-16) == std::complex<double>(0.0));
    CHECK(d.at(5) == std::complex<double>(1.0));
    CHECK(d.at(10) == std::complex<double>(1.0));
    CHECK(d.at(11) == std::complex<double>(0.0));
    const Spectrum dd = dealias(d);
    for (int k = -16; k < 16; ++k) CHECK(dd.at(k) == d.at(k));
}

TEST_CASE("quadrature") {
    const auto g = make_grid(16);
    CHECK(integrate(GridField::constant(g, 1.0)) == doctest::Approx(2 * pi));
    CHECK(integrate(GridField::sample(g, [](double x) { return std::sin(x) * std::sin(x); })) ==
          doctest::Approx(pi).epsilon(1e-14));
}
