#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "undulant/dynamics.hpp"
#include "undulant/geometry.hpp"
#include "undulant/operators.hpp"

namespace undulant {

/// Radial ignition data: u1 = amplitude * (1 - tanh((x - x_front)/(4 dx))) / 2, u2 = 0.
///
/// A positive refractory_width sets u2 = refractory_level on [L - refractory_width, L), just
/// behind the ignited block across the periodic seam, so that only a right-moving pulse forms.
State step_initial_data(const Grid& grid, const FhnParams& params, double x_front, double amplitude = 1.0,
                        double refractory_width = 0.0, double refractory_level = 0.5);

/// Position of the rightmost downward crossing of `level` by u1 (u1 >= level on the left node,
/// < level on the right node), located by linear interpolation. Empty when there is none.
std::optional<double> front_position(const Field& u1, const Grid& grid, double level = 0.5);

/// Probe that records front_position (NaN when absent) under the name "pulse_x".
Probe pulse_probe(const Grid& grid, double level = 0.5);

struct PulseMeasurement {
    double level = 0.5;
    std::vector<std::pair<double, double>> crossings;  // (t, x) pairs inside the fit window
    double speed = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS deviation of x from the fitted line
    double t_start = 0.0;
    double t_end = 0.0;
};

struct SpeedFitOptions {
    double window_begin = 0.3;  // fractions of the final time
    double window_end = 0.9;
    double seam_fraction = 0.1;
};

PulseMeasurement measure_speed(const std::vector<double>& times, const std::vector<double>& positions,
                               double domain_length, double level = 0.5, const SpeedFitOptions& opts = {});

/// Uses the "pulse_x" column of the trajectory.
PulseMeasurement measure_speed(const Trajectory& traj, double level = 0.5, const SpeedFitOptions& opts = {});

/// Leading-order fast pulse speed (sqrt(2)/2)(1 - 2 alpha).
double theoretical_fast_speed(double alpha);

}  // namespace undulant
