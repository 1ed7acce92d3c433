#pragma once

// Run configuration and the on-disk formats:
//   <prefix>.traj.csv     header t,x0,...,x{n-1}; one row per stored time; %.17g
//   <prefix>.summary.json config echo, invariant series, blow-up/truncation flags, wall time
//   <prefix>.report.json  check reports (written by the command-line tool)

#include "geoflow/geodesic.hpp"

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geoflow {

struct RunConfig {
    std::string equation = "kdv";
    std::size_t n = 256;
    double length = 2.0 * std::numbers::pi;
    double dt = 1e-3;
    double t_end = 1.0;
    std::string scheme = "ifrk4";
    double eps = 1.0;
    unsigned store_every = 1;
    std::string initial_condition = "sin(x)";
    bool dealias = true;
    bool allow_past_blowup = false;

    /// Sets one field from text. Keys use the command-line spelling
    /// (equation, n, length, dt, t-end, scheme, eps, store-every, ic, dealias,
    /// allow-past-blowup); underscores are accepted for dashes. Throws
    /// Error(InvalidArgument) naming the key.
    void set(std::string_view key, std::string_view value);

    /// Throws Error(InvalidArgument) naming the first offending key.
    void validate() const;

    EquationConfig equation_config() const;
    SolverOptions solver_options() const;
    PeriodicGrid grid() const;
    GridField initial_field() const;
};

/// key = value lines; '#' starts a comment. Errors are Error(Parse) naming
/// the file, line and key.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
void apply_config_text(RunConfig& cfg, std::string_view text, std::string_view source = "<config>");

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

struct TrajectoryTable {
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
};

/// Throws Error(Parse) with the line number on malformed input.
TrajectoryTable read_trajectory_csv(const std::filesystem::path& path);

std::string summary_json(const RunConfig& cfg, const Trajectory& traj, double wall_seconds);
void write_text(const std::filesystem::path& path, std::string_view text);

struct Summary {
    RunConfig config;
    std::vector<double> times;
    std::vector<InvariantRecord> invariants;
    bool blew_up = false;
    std::optional<double> blowup_time;
    bool truncated = false;
    double wall_time = 0.0;
    std::vector<std::string> warnings;
};

Summary read_summary_json(const std::filesystem::path& path);

}  // namespace geoflow
