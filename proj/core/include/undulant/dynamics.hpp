#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "undulant/geometry.hpp"
#include "undulant/linear_solver.hpp"
#include "undulant/operators.hpp"

namespace undulant {

enum class Scheme { imex_euler, imex_cn };

struct StepperConfig {
    double dt = 0.1;
    Scheme scheme = Scheme::imex_euler;
    double tolerance = 1e-10;
    int max_iterations = 5000;
    LinearSolverKind solver = LinearSolverKind::cg;
    bool nonlinear = true;  // false drops h(u1), leaving the linear system du/dt = A u

    void validate() const;
};

/// min(0.1, 0.25 / (alpha + max |h'(u1)|)) for the given state.
double default_dt(const State& u);

/// Semi-implicit stepper: (Delta - alpha) implicit, h(u1) - u2 explicit, u2 relaxation implicit.
///
/// imex_euler:
///   (I - dt (Delta - alpha)) u1' = u1 + dt (h(u1) - u2)
///   u2' = (u2 + dt eps u1') / (1 + dt eps gamma)
/// imex_cn: Crank-Nicolson on (Delta - alpha) with the explicit terms averaged between the
/// current state and an imex_euler predictor, and a trapezoidal u2 relaxation. Second order.
class ImexStepper {
public:
    ImexStepper(const RadiusProfile& profile, const StepperConfig& cfg, const FhnParams& params);

    void advance(State& u);

    const StepperConfig& config() const noexcept { return cfg_; }
    long linear_iterations() const noexcept { return iterations_; }

private:
    void euler_into(const State& u, State& out, double dt);

    RadiusProfile profile_;
    StepperConfig cfg_;
    FhnParams params_;
    ShiftedSolver full_;
    ShiftedSolver half_;
    long iterations_ = 0;
};

State step(const State& u, const RadiusProfile& profile, const StepperConfig& cfg);

struct Probe {
    std::string name;
    std::function<double(double t, const State& u)> eval;
};

struct ProbeSet {
    int stride = 1;            // sample every `stride` steps (and at the final time)
    std::vector<Probe> probes;
    int snapshot_stride = 0;   // multiple of stride; 0 disables snapshots
    /// Applied to the state before it is stored as a snapshot (e.g. the theta average).
    std::function<State(const State&)> snapshot_transform;
};

struct Trajectory {
    std::vector<double> times;
    std::map<std::string, std::vector<double>> series;
    std::vector<double> snapshot_times;
    std::vector<State> snapshots;
    State final_state;
    double domain_length = 0.0;
    long steps = 0;
    long linear_iterations = 0;

    const std::vector<double>& column(const std::string& name) const;
};

/// Integrates from u0 to T with a fixed step (dt shrunk so that T is hit exactly).
Trajectory simulate(const State& u0, const RadiusProfile& profile, const StepperConfig& cfg, double T,
                    const ProbeSet& probes);

/// simulate() restricted to radial states (the effective one-dimensional system).
Trajectory simulate_radial(const State& w0, const RadiusProfile& profile, const StepperConfig& cfg, double T,
                           const ProbeSet& probes);

}  // namespace undulant
