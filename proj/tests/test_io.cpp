#include "geoflow/error.hpp"
#include "geoflow/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using namespace geoflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "geoflow_test_io";
    fs::create_directories(dir);
    return dir / name;
}

std::string error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return std::string(to_string(e.code())) + " " + e.what();
    }
    return "no error";
}

}  // namespace

TEST_CASE("config text sets keys and reports the offending line") {
    RunConfig c;
    apply_config_text(c, "# a comment\nequation = ch\n\nn=128   # trailing\nt_end = 0.25\nstore-every = 10\n"
                         "ic = sin(x) + 0.5\ndealias = false\nallow-past-blowup = yes\nscheme = rk4\n");
    CHECK(c.equation == "ch");
    CHECK(c.n == 128);
    CHECK(c.t_end == 0.25);
    CHECK(c.store_every == 10);
    CHECK(c.initial_condition == "sin(x) + 0.5");
    CHECK_FALSE(c.dealias);
    CHECK(c.allow_past_blowup);
    CHECK(c.scheme == "rk4");
    CHECK_NOTHROW(c.validate());

    RunConfig d;
    CHECK(error_of([&] { apply_config_text(d, "n = 64\ndt = fast\n", "run.cfg"); }) ==
          "E_PARSE run.cfg line 2: key 'dt': 'fast' is not a finite number");
    CHECK(error_of([&] { apply_config_text(d, "\n\ncolour = red\n", "run.cfg"); }) ==
          "E_PARSE run.cfg line 3: unknown key 'colour'");
    CHECK(error_of([&] { apply_config_text(d, "n 64\n", "run.cfg"); }) ==
          "E_PARSE run.cfg line 1: expected 'key = value', got 'n 64'");
    CHECK(error_of([&] { apply_config_text(d, "store_every = 0", "run.cfg"); }) ==
          "E_PARSE run.cfg line 1: key 'store-every': must be a positive integer");
}

TEST_CASE("validation names the key") {
    auto fails = [](const char* key, const char* value) {
        RunConfig c;
        c.set(key, value);
        return error_of([&] { c.validate(); });
    };
    CHECK(fails("equation", "burgers").find("key 'equation'") != std::string::npos);
    CHECK(fails("n", "7").find("key 'n'") != std::string::npos);
    CHECK(fails("dt", "-1").find("key 'dt'") != std::string::npos);
    CHECK(fails("t-end", "0").find("key 't-end'") != std::string::npos);
    CHECK(fails("length", "0").find("key 'length'") != std::string::npos);
    CHECK(fails("scheme", "euler").find("key 'scheme'") != std::string::npos);
    CHECK(fails("ic", "sin(").find("key 'ic'") != std::string::npos);
    CHECK(error_of([] { RunConfig c; c.set("n", "-3"); }).find("key 'n'") != std::string::npos);
}

TEST_CASE("config maps onto the numerical layer") {
    RunConfig c;
    c.set("equation", "dch");
    c.set("eps", "0.5");
    c.set("n", "64");
    c.set("length", "10");
    c.set("scheme", "rk4");
    c.set("ic", "x");
    CHECK(c.equation_config().equation() == Equation::DispersiveCH);
    CHECK(c.equation_config().eps == 0.5);
    CHECK(c.solver_options().scheme == Scheme::RK4);
    CHECK(c.grid().size() == 64);
    CHECK(c.grid().length() == 10.0);
    const auto f = c.initial_field();
    CHECK(f[5] == doctest::Approx(c.grid().point(5)));
}

TEST_CASE("trajectory CSV round-trips bit for bit") {
    const auto g = make_grid(32);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    Trajectory t;
    for (int k = 0; k < 5; ++k) {
        std::vector<double> v(g.size());
        for (auto& x : v) x = d(rng) * std::pow(10.0, k - 2);
        t.times.push_back(0.1 * k + 1e-17 * k);
        t.snapshots.emplace_back(g, v);
    }
    const auto path = scratch("rt.traj.csv");
    write_trajectory_csv(path, t);
    {
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("t,x0,x1,", 0) == 0);
        CHECK(header.substr(header.size() - 4) == ",x31");
    }
    const auto back = read_trajectory_csv(path);
    REQUIRE(back.times.size() == 5);
    double worst = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(back.times[k] == t.times[k]);
        REQUIRE(back.rows[k].size() == g.size());
        for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(back.rows[k][j] - t.snapshots[k][j]));
    }
    CHECK(worst == 0.0);
}

TEST_CASE("malformed CSV is rejected with a line number") {
    const auto path = scratch("bad.traj.csv");
    auto with = [&](const std::string& text) {
        std::ofstream(path) << text;
        return error_of([&] { (void)read_trajectory_csv(path); });
    };
    CHECK(with("t,x0,x1\n0,1,2\n0.1,1\n").find("line 3: expected 3 values, found 2") != std::string::npos);
    CHECK(with("t,x0,x1\n0,1,two\n").find("line 2: bad number 'two'") != std::string::npos);
    CHECK(with("t,y0\n").find("line 1") != std::string::npos);
    CHECK(error_of([] { (void)read_trajectory_csv("/nonexistent/file.csv"); }).rfind("E_INVALID_ARGUMENT", 0) == 0);
}

TEST_CASE("summary JSON round-trips the config and invariant series") {
    RunConfig c;
    c.set("equation", "kdv");
    c.set("n", "64");
    c.set("dt", "0.001");
    c.set("t-end", "0.05");
    c.set("store-every", "10");
    c.set("ic", "sin(x) + 0.3*cos(2*x)");
    const auto tr = simulate(c.equation_config(), c.initial_field(), c.t_end, c.solver_options());
    const auto path = scratch("rt.summary.json");
    write_text(path, summary_json(c, tr, 0.125));
    const auto s = read_summary_json(path);
    CHECK(s.config.equation == "kdv");
    CHECK(s.config.n == 64);
    CHECK(s.config.dt == 0.001);
    CHECK(s.config.initial_condition == c.initial_condition);
    CHECK(s.config.store_every == 10);
    CHECK(s.times == tr.times);
    REQUIRE(s.invariants.size() == tr.invariant_log.size());
    for (std::size_t k = 0; k < s.invariants.size(); ++k) {
        CHECK(std::abs(s.invariants[k].energy - tr.invariant_log[k].energy) <= 1e-15 * std::abs(tr.invariant_log[k].energy));
        CHECK(s.invariants[k].mass == tr.invariant_log[k].mass);
        CHECK(s.invariants[k].l2 == tr.invariant_log[k].l2);
    }
    CHECK_FALSE(s.blew_up);
    CHECK_FALSE(s.truncated);
    CHECK(s.wall_time == 0.125);
}

TEST_CASE("summary reader rejects damaged files") {
    const auto path = scratch("bad.summary.json");
    std::ofstream(path) << "{\"config\": {}}";
    CHECK(error_of([&] { (void)read_summary_json(path); }).rfind("E_PARSE", 0) == 0);
    std::ofstream(path) << "{not json";
    CHECK(error_of([&] { (void)read_summary_json(path); }).rfind("E_PARSE", 0) == 0);
}
