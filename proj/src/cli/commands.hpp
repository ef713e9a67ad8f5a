#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/simulation.hpp"

namespace frontcap::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvariant = 2,
    kSolver = 3,
    kNoOracle = 4,
};

struct RunHooks {
    // after every completed step (and once for the initial state)
    std::function<void(const Simulation&)> on_step;
    // at each snapshot; index counts from 0
    std::function<void(const Simulation&, std::size_t)> on_snapshot;
};

struct RunSummary {
    std::size_t steps = 0;
    double t = 0.0;
    double min_density = 0.0;
    double max_density = 0.0;
    std::vector<std::pair<std::size_t, double>> snapshots;  // (index, actual t)
    double l1_error = -1.0;                                // Barenblatt runs only
};

/// Snapshot targets: t = 0, the configured times (or evenly spaced ones),
/// and t_end.
std::vector<double> snapshot_targets(const RunConfig& rc);

/// Steps a simulation to t_end with invariant checks. Snapshots go to the
/// completed step nearest each target.
RunSummary execute(const RunConfig& rc, const RunHooks& hooks = {});

int cmd_run(const Config& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_converge(const Config& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_compare_oracle(const Config& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep_m(const Config& cfg, const std::filesystem::path& out, std::ostream& log);

/// Loads the config, applies overrides, dispatches and maps exceptions to
/// exit codes (message on err).
int run_command(const std::string& name, const std::string& config_path, const std::string& out_dir,
                const std::vector<std::string>& overrides, std::ostream& log, std::ostream& err);

}  // namespace frontcap::cli
