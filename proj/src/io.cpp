#include "geoflow/io.hpp"

#include "geoflow/error.hpp"
#include "geoflow/expr.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace geoflow {

using nlohmann::json;

namespace {

std::string normalise_key(std::string_view key) {
    std::string k(key);
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

[[noreturn]] void bad(std::string_view key, const std::string& msg) {
    throw Error(ErrorCode::InvalidArgument, "key '" + std::string(key) + "': " + msg);
}

double parse_double(std::string_view key, std::string_view text) {
    std::string s(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        bad(key, "'" + s + "' is not a finite number");
    return v;
}

unsigned long long parse_unsigned(std::string_view key, std::string_view text) {
    unsigned long long v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size())
        bad(key, "'" + std::string(text) + "' is not a nonnegative integer");
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    bad(key, "'" + std::string(text) + "' is not a boolean");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void RunConfig::set(std::string_view key_in, std::string_view value) {
    const std::string key = normalise_key(key_in);
    if (key == "equation") equation = std::string(value);
    else if (key == "n") n = parse_unsigned(key, value);
    else if (key == "length") length = parse_double(key, value);
    else if (key == "dt") dt = parse_double(key, value);
    else if (key == "t-end") t_end = parse_double(key, value);
    else if (key == "scheme") scheme = std::string(value);
    else if (key == "eps") eps = parse_double(key, value);
    else if (key == "store-every") {
        const auto v = parse_unsigned(key, value);
        if (v == 0 || v > 1000000000ULL) bad(key, "must be a positive integer");
        store_every = static_cast<unsigned>(v);
    } else if (key == "ic" || key == "initial-condition") initial_condition = std::string(value);
    else if (key == "dealias") dealias = parse_bool(key, value);
    else if (key == "allow-past-blowup") allow_past_blowup = parse_bool(key, value);
    else throw Error(ErrorCode::InvalidArgument, "unknown key '" + std::string(key_in) + "'");
}

void RunConfig::validate() const {
    if (!parse_equation(equation))
        bad("equation", "unknown equation '" + equation + "' (expected hopf, ch, hs, kdv, dch or dhs)");
    if (n < 8 || n % 2 != 0) bad("n", "must be an even integer >= 8");
    if (n > (1u << 22)) bad("n", "is unreasonably large");
    if (!(length > 0.0)) bad("length", "must be positive");
    if (!(dt > 0.0)) bad("dt", "must be positive");
    if (!(t_end > 0.0)) bad("t-end", "must be positive");
    if (t_end / dt > 1e9) bad("dt", "would need more than 1e9 steps");
    if (!parse_scheme(scheme)) bad("scheme", "unknown scheme '" + scheme + "' (expected rk4 or ifrk4)");
    if (!std::isfinite(eps)) bad("eps", "must be finite");
    if (store_every == 0) bad("store-every", "must be positive");
    try {
        (void)Expression::parse(initial_condition);
    } catch (const Error& e) {
        bad("ic", e.what());
    }
}

EquationConfig RunConfig::equation_config() const {
    const auto eq = parse_equation(equation);
    if (!eq) bad("equation", "unknown equation '" + equation + "'");
    return EquationConfig::make(*eq, eps);
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.dt = dt;
    o.scheme = parse_scheme(scheme).value_or(Scheme::IFRK4);
    o.dealias = dealias;
    o.store_every = store_every;
    o.allow_past_blowup = allow_past_blowup;
    return o;
}

PeriodicGrid RunConfig::grid() const { return PeriodicGrid(n, length); }

GridField RunConfig::initial_field() const { return Expression::parse(initial_condition).sample(grid()); }

void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view source) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string where = std::string(source) + " line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::Parse, where + ": expected 'key = value', got '" + std::string(line) + "'");
        const std::string_view key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorCode::Parse, where + ": missing key before '='");
        try {
            cfg.set(key, value);
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, where + ": " + e.what());
        }
        if (end == text.size()) break;
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str(), path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error(ErrorCode::InvalidArgument, "write to '" + path.string() + "' failed");
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    std::string s = "t";
    const std::size_t n = traj.snapshots.empty() ? 0 : traj.snapshots.front().size();
    for (std::size_t j = 0; j < n; ++j) s += ",x" + std::to_string(j);
    s += '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        s += format_double(traj.times[k]);
        for (double v : traj.snapshots[k].values()) {
            s += ',';
            s += format_double(v);
        }
        s += '\n';
    }
    write_text(path, s);
}

TrajectoryTable read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
    auto fail = [&](std::size_t line, const std::string& msg) -> void {
        throw Error(ErrorCode::Parse, path.string() + " line " + std::to_string(line) + ": " + msg);
    };
    TrajectoryTable table;
    std::string line;
    if (!std::getline(in, line)) fail(1, "missing header");
    std::size_t columns = 0;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const std::string expect = columns == 0 ? "t" : "x" + std::to_string(columns - 1);
            if (cell != expect) fail(1, "header column " + std::to_string(columns + 1) + " should be '" + expect + "'");
            ++columns;
        }
        if (columns < 2) fail(1, "header needs t and at least one x column");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> row;
        const char* p = line.c_str();
        const char* end = p + line.size();
        while (p <= end) {
            const char* comma = std::find(p, end, ',');
            const std::string cell(p, comma);
            char* stop = nullptr;
            const double v = std::strtod(cell.c_str(), &stop);
            if (cell.empty() || stop != cell.c_str() + cell.size()) fail(line_no, "bad number '" + cell + "'");
            row.push_back(v);
            p = comma + 1;
        }
        if (row.size() != columns)
            fail(line_no, "expected " + std::to_string(columns) + " values, found " + std::to_string(row.size()));
        table.times.push_back(row.front());
        row.erase(row.begin());
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string summary_json(const RunConfig& cfg, const Trajectory& traj, double wall_seconds) {
    json j;
    j["config"] = {{"equation", cfg.equation},
                   {"n", cfg.n},
                   {"length", cfg.length},
                   {"dt", cfg.dt},
                   {"t_end", cfg.t_end},
                   {"scheme", cfg.scheme},
                   {"eps", cfg.eps},
                   {"store_every", cfg.store_every},
                   {"initial_condition", cfg.initial_condition},
                   {"dealias", cfg.dealias},
                   {"allow_past_blowup", cfg.allow_past_blowup}};
    j["dt_used"] = traj.dt;
    j["times"] = traj.times;
    json inv = {{"energy", json::array()}, {"momentum_mean", json::array()}, {"mass", json::array()}, {"l2", json::array()}};
    for (const auto& r : traj.invariant_log) {
        inv["energy"].push_back(r.energy);
        inv["momentum_mean"].push_back(r.momentum_mean);
        inv["mass"].push_back(r.mass);
        inv["l2"].push_back(r.l2);
    }
    j["invariants"] = inv;
    j["blew_up"] = traj.blew_up;
    j["blowup_time"] = traj.blowup_time ? json(*traj.blowup_time) : json(nullptr);
    j["truncated"] = traj.truncated;
    j["final_time"] = traj.times.empty() ? 0.0 : traj.times.back();
    j["warnings"] = traj.warnings;
    j["wall_time_s"] = wall_seconds;
    return j.dump(2) + "\n";
}

Summary read_summary_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path.string() + "'");
    Summary s;
    try {
        const json j = json::parse(in);
        const json& c = j.at("config");
        s.config.equation = c.at("equation").get<std::string>();
        s.config.n = c.at("n").get<std::size_t>();
        s.config.length = c.at("length").get<double>();
        s.config.dt = c.at("dt").get<double>();
        s.config.t_end = c.at("t_end").get<double>();
        s.config.scheme = c.at("scheme").get<std::string>();
        s.config.eps = c.at("eps").get<double>();
        s.config.store_every = c.at("store_every").get<unsigned>();
        s.config.initial_condition = c.at("initial_condition").get<std::string>();
        s.config.dealias = c.at("dealias").get<bool>();
        s.config.allow_past_blowup = c.at("allow_past_blowup").get<bool>();
        s.times = j.at("times").get<std::vector<double>>();
        const json& inv = j.at("invariants");
        const auto e = inv.at("energy").get<std::vector<double>>(), m = inv.at("momentum_mean").get<std::vector<double>>(),
                   ms = inv.at("mass").get<std::vector<double>>(), l2 = inv.at("l2").get<std::vector<double>>();
        if (e.size() != s.times.size() || m.size() != e.size() || ms.size() != e.size() || l2.size() != e.size())
            throw Error(ErrorCode::Parse, path.string() + ": invariant series and times differ in length");
        for (std::size_t k = 0; k < e.size(); ++k) s.invariants.push_back({e[k], m[k], ms[k], l2[k]});
        s.blew_up = j.at("blew_up").get<bool>();
        if (!j.at("blowup_time").is_null()) s.blowup_time = j.at("blowup_time").get<double>();
        s.truncated = j.at("truncated").get<bool>();
        s.wall_time = j.at("wall_time_s").get<double>();
        s.warnings = j.at("warnings").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
    }
    return s;
}

}  // namespace geoflow
