#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "undulant/dynamics.hpp"
#include "undulant/errors.hpp"
#include "undulant/geometry.hpp"
#include "undulant/operators.hpp"
#include "undulant/pulse.hpp"

namespace undulant {

enum class Scenario { operator_selftest, pulse_speed, symmetrization, effective_comparison };

std::string_view to_string(Scenario s);

struct GridSpec {
    int nx = 256;
    int ntheta = 64;
    double length = 40.0;
};

/// Radial ignition block; see step_initial_data.
struct InitialSpec {
    double x_front = 10.0;
    double amplitude = 1.0;
    double refractory_width = 0.0;
    double refractory_level = 0.5;
};

/// u_component += amplitude * cos(mode * theta), uniform in x.
struct PerturbationSpec {
    int mode = 1;
    double amplitude = 0.05;
    int component = 1;
};

struct PulseSpec {
    double level = 0.5;
    std::vector<double> alphas;  // empty: params.alpha only
    SpeedFitOptions fit;
};

struct ComparisonSpec {
    double sample_time = 20.0;
    std::vector<double> amplitude_divisors{1.0, 2.0, 4.0};
};

struct SelftestSpec {
    int profiles = 5;
    int pairs = 20;
};

/// X = X1 + weight K^4 X0; unset values default to 2 C2 / gamma and the observed sup of avg_h10.
struct CombinedSpec {
    std::optional<double> weight;
    std::optional<double> K;
};

struct Thresholds {
    double speed_tolerance = 0.05;
    double rate_fraction = 0.9;
    double envelope_constant_max = 10.0;
    double envelope_margin = 0.1;
    double decay_floor = 1e-10;
    double slope_target = 2.0;
    double slope_tolerance = 0.4;
    double radial_invariance_max = 1e-12;
    double symmetry_tolerance = 1e-12;
    double eigenvalue_tolerance = 1e-12;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::symmetrization;
    FhnParams params;
    ProfileSpec profile;
    GridSpec grid;
    StepperConfig stepper;
    double T = 100.0;
    InitialSpec initial;
    PerturbationSpec perturbation;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    int probe_stride = 10;
    int snapshot_stride = 0;  // steps between binary field snapshots; 0 disables
    PulseSpec pulse;
    ComparisonSpec comparison;
    SelftestSpec selftest;
    CombinedSpec combined;
    Thresholds thresholds;

    Grid make_grid() const { return Grid(grid.nx, grid.ntheta, grid.length); }
};

/// Parses a config document. Type errors, unknown keys and unknown enum values throw ConfigError
/// naming the offending field path; value ranges are left to validate().
ExperimentConfig parse_config(const nlohmann::json& doc);

/// Reads a JSON file (// and /* */ comments allowed) and parses it.
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& cfg);

enum class Severity { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string path;
    ErrorCode code = ErrorCode::ConfigError;
    std::string message;
};

std::string format(const Diagnostic& d);

/// Schema and cross-field checks. Never throws for bad values; returns one entry per problem.
std::vector<Diagnostic> validate(const ExperimentConfig& cfg);

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace undulant
