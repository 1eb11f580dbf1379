#pragma once

// Named experiments: a scenario file plus overrides, evaluated over its sweep
// grid for every series, producing one table row per grid point.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "mmh/config.hpp"
#include "mmh/csv.hpp"

namespace mmh {

struct Scenario {
    RawConfig raw;
    ResolvedConfig base;
    SweepSpec sweep;
};

/// Resolves the base configuration and the sweep; every series and grid point
/// is resolved too, so configuration errors surface before any evaluation.
Scenario make_scenario(const RawConfig& raw);

/// Path to a bundled scenario if `name_or_path` names one, else the path itself.
std::filesystem::path find_scenario(const std::string& name_or_path);

std::filesystem::path bundled_scenario_dir();

struct BundledScenario {
    std::string name;
    std::string figure;
    std::string mode;
    std::string description;
    std::filesystem::path path;
};

/// Sorted by name.
std::vector<BundledScenario> list_bundled(const std::filesystem::path& dir = bundled_scenario_dir());

using ProgressFn = std::function<void(const std::string&)>;

/// Columns: series, sweep value, analytic (unless engine = sim), simulated,
/// ci_halfwidth and trials (unless engine = analytic), wall_time_s (unless
/// run.timing = off). Rows follow series order, then grid order.
ResultTable run_experiment(const Scenario& scenario, const ProgressFn& progress = {});

}  // namespace mmh
