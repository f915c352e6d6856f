#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "undulant/dynamics.hpp"
#include "undulant/operators.hpp"

namespace undulant {

// Lyapunov quantities of the non-radial part u_perp = u - mean_theta(u). All surface
// quantities use the surface measure sqrt(g) dx dtheta; radial ones use sqrt(g) dx.

/// X0 = 1/2 <u_perp, u_perp>.
double lyapunov_X0(const State& u, const RadiusProfile& profile);
/// X1 = 1/2 (||grad u1_perp||^2 + alpha ||u1_perp||^2 + gamma ||u2_perp||^2), gradient form.
double lyapunov_X1(const State& u, const RadiusProfile& profile);
/// X1 through the operator: -1/2 <u_perp, A u_perp>.
double lyapunov_X1_operator(const State& u, const RadiusProfile& profile);
/// Y1 = 1/2 (||grad v1||^2 + alpha ||v1||^2 + gamma ||v2||^2), v = ubar - w, radial measure.
double lyapunov_Y1(const State& ubar, const State& w, const RadiusProfile& profile);
/// W = ||u1_perp||_{H1}^4 + ||u1_perp||_{H1}^8 with ||f||_{H1}^2 = ||grad f||^2 + ||f||^2.
double remainder_W(const State& u, const RadiusProfile& profile);

/// ||u_perp||_{1,0}.
double perp_h10(const State& u, const RadiusProfile& profile);
/// ||ubar||_{1,0} of the theta average, measured on the surface (2pi times the radial measure).
double average_h10(const State& u, const RadiusProfile& profile);
/// ||v||_{1,0} of a radial difference expressed in the surface measure: sqrt(2pi * radial norm^2).
double radial_gap_h10(const State& v, const RadiusProfile& profile);

/// (11 - 5 eps gamma^2) / 8
double c2_constant(const FhnParams& p);
/// 2 C2 / gamma, the smallest admissible weight of X0 in the combined functional.
double default_combined_weight(const FhnParams& p);
/// X = X1 + C' K^4 X0
inline double combined_X(double x0, double x1, double weight, double K) { return x1 + weight * K * K * K * K * x0; }

/// Probes named X0, X1, W, perp_h10, avg_h10 for surface runs.
std::vector<Probe> lyapunov_probes(const RadiusProfile& profile);

struct RateFit {
    double rate = 0.0;       // negated slope of log(value)
    double intercept = 0.0;  // log-space intercept
    double t_start = 0.0;
    double t_end = 0.0;
    double residual = 0.0;   // RMS residual in log space
    double floor = 1e-10;
    std::size_t points = 0;
};

/// Least squares on (t, log value) over the samples with value > floor.
RateFit fit_rate(const std::vector<double>& times, const std::vector<double>& values, double floor = 1e-10);

struct EnvelopeReport {
    bool passed = true;
    std::optional<std::size_t> first_violation;
    double violation_time = 0.0;
    double max_ratio = 0.0;  // max value / (reference e^{-nu t})
    std::size_t checked = 0;
};

/// Checks value(t) <= (2 + margin) x0 e^{-nu t} at every sample above `floor`; x0 defaults to
/// the first checked value.
EnvelopeReport check_decay_envelope(const std::vector<double>& times, const std::vector<double>& values,
                                    double nu, double margin = 0.0, std::optional<double> x0 = std::nullopt,
                                    double floor = 0.0);

struct GrowthEnvelopeReport {
    bool passed = true;
    std::optional<std::size_t> first_violation;
    double violation_time = 0.0;
    double validity_horizon = 0.0;  // last sample time at which the envelope is <= 1
    std::vector<double> envelope;   // (Y0 + sup_{s<=t} W) e^{Ct}
    std::size_t checked = 0;
};

/// Checks Y(t) <= (Y0 + sup_{s<=t} W(s)) e^{C t} on the prefix where that bound is <= 1 and t <= horizon.
GrowthEnvelopeReport check_growth_envelope(const std::vector<double>& times, const std::vector<double>& Y,
                                           const std::vector<double>& W, double C, double horizon,
                                           std::optional<double> y0 = std::nullopt);

/// Smallest C for which the growth envelope holds on all samples with t > 0 (0 if it holds with C = 0).
double minimal_growth_constant(const std::vector<double>& times, const std::vector<double>& Y,
                               const std::vector<double>& W);

struct GapSeries {
    std::vector<double> times;
    std::vector<double> gap_h10;
    std::vector<double> Y1;
};

/// Compares theta averages of the surface run with the radial run sample by sample. Both
/// trajectories need snapshots at identical times; surface snapshots are averaged here.
GapSeries compare_average_to_effective(const Trajectory& surface, const Trajectory& radial,
                                       const RadiusProfile& profile);

}  // namespace undulant
