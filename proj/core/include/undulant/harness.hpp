#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "undulant/check.hpp"
#include "undulant/config.hpp"

namespace undulant {

struct ExitReport {
    Scenario scenario = Scenario::operator_selftest;
    std::vector<Check> checks;
    nlohmann::json summary;
    std::vector<std::filesystem::path> files;

    bool passed() const { return all_passed(checks); }
};

struct RunOptions {
    std::optional<std::filesystem::path> output_dir;  // overrides cfg.output_dir
    bool write_files = true;
    std::function<void(const std::string&)> log;
};

/// Validates, runs the scenario, writes the CSVs and summary.json, and reports the checks.
/// Config problems throw ConfigError; numeric failures propagate with context.
ExitReport run(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// 0 when every check passed, 1 otherwise.
int exit_code(const ExitReport& report);

nlohmann::json to_json(const Check& c);

/// Initial data of the surface scenarios: the lifted radial ignition block plus
/// amplitude * cos(mode * theta) on the configured component.
State surface_initial_data(const ExperimentConfig& cfg, const Grid& grid, double amplitude);

}  // namespace undulant
