#include "undulant/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "undulant/errors.hpp"

namespace undulant {

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
    if (!(tolerance > 0.0 && tolerance < 1e-4))
        throw Error(ErrorCode::InvalidArgument, "linear-solve tolerance must lie in (0, 1e-4)");
    if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be positive");
}

double default_dt(const State& u) {
    double hmax = 0.0;
    for (std::size_t k = 0; k < u.u1.size(); ++k)
        hmax = std::max(hmax, std::abs(cubic_h_prime(u.u1[k], u.params.alpha)));
    return std::min(0.1, 0.25 / (u.params.alpha + hmax));
}

ImexStepper::ImexStepper(const RadiusProfile& profile, const StepperConfig& cfg, const FhnParams& params)
    : profile_(profile),
      cfg_(cfg),
      params_(params),
      full_((cfg.validate(), profile), cfg.dt, params.alpha, cfg.solver, cfg.tolerance, cfg.max_iterations),
      half_(profile, 0.5 * cfg.dt, params.alpha, cfg.solver, cfg.tolerance, cfg.max_iterations) {
    params.validate();
}

void ImexStepper::euler_into(const State& u, State& out, double dt) {
    const auto h = [this](double v, double alpha) { return cfg_.nonlinear ? cubic_h(v, alpha) : 0.0; };
    const double a = params_.alpha, e = params_.epsilon, g = params_.gamma;
    Field rhs = Field::like(u.u1);
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = u.u1[k] + dt * (h(u.u1[k], a) - u.u2[k]);
    out.u1 = u.u1;
    iterations_ += full_.solve(rhs, out.u1).iterations;
    out.u2 = Field::like(u.u2);
    const double denom = 1.0 + dt * e * g;
    for (std::size_t k = 0; k < rhs.size(); ++k) out.u2[k] = (u.u2[k] + dt * e * out.u1[k]) / denom;
    out.params = u.params;
}

void ImexStepper::advance(State& u) {
    require_same_shape(u.u1, u.u2, "ImexStepper::advance");
    if (u.params != params_) throw Error(ErrorCode::ParamMismatch, "state parameters differ from the stepper's");
    const double dt = cfg_.dt;
    State next;
    if (cfg_.scheme == Scheme::imex_euler) {
        euler_into(u, next, dt);
    } else {
        const auto h = [this](double v, double alpha) { return cfg_.nonlinear ? cubic_h(v, alpha) : 0.0; };
        const double a = params_.alpha, e = params_.epsilon, g = params_.gamma;
        State pred;
        euler_into(u, pred, dt);
        Field lap = laplacian(u.u1, profile_);
        Field rhs = Field::like(u.u1);
        for (std::size_t k = 0; k < rhs.size(); ++k) {
            const double explicit_now = h(u.u1[k], a) - u.u2[k];
            const double explicit_pred = h(pred.u1[k], a) - pred.u2[k];
            rhs[k] = u.u1[k] + 0.5 * dt * (lap[k] - a * u.u1[k]) + 0.5 * dt * (explicit_now + explicit_pred);
        }
        next.u1 = pred.u1;
        iterations_ += half_.solve(rhs, next.u1).iterations;
        next.u2 = Field::like(u.u2);
        const double lo = 1.0 - 0.5 * dt * e * g, hi = 1.0 + 0.5 * dt * e * g;
        for (std::size_t k = 0; k < rhs.size(); ++k)
            next.u2[k] = (lo * u.u2[k] + 0.5 * dt * e * (u.u1[k] + next.u1[k])) / hi;
        next.params = u.params;
    }
    if (!next.all_finite()) throw Error(ErrorCode::NonFiniteState, "non-finite values after a step; dt is too large");
    u = std::move(next);
}

State step(const State& u, const RadiusProfile& profile, const StepperConfig& cfg) {
    ImexStepper stepper(profile, cfg, u.params);
    State out = u;
    stepper.advance(out);
    return out;
}

const std::vector<double>& Trajectory::column(const std::string& name) const {
    auto it = series.find(name);
    if (it == series.end()) throw Error(ErrorCode::InvalidArgument, "trajectory has no series '" + name + "'");
    return it->second;
}

Trajectory simulate(const State& u0, const RadiusProfile& profile, const StepperConfig& cfg, double T,
                    const ProbeSet& probes) {
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidArgument, "final time must be positive");
    if (probes.stride < 1) throw Error(ErrorCode::InvalidArgument, "probe stride must be >= 1");
    cfg.validate();
    if (!u0.all_finite()) throw Error(ErrorCode::NonFiniteState, "initial state is not finite");

    const long nsteps = std::max(1L, static_cast<long>(std::ceil(T / cfg.dt - 1e-9)));
    StepperConfig run_cfg = cfg;
    run_cfg.dt = T / static_cast<double>(nsteps);
    ImexStepper stepper(profile, run_cfg, u0.params);

    Trajectory traj;
    traj.domain_length = profile.grid.length();
    for (const Probe& p : probes.probes) traj.series[p.name];

    auto sample = [&](long n, const State& u) {
        const double t = n * run_cfg.dt;
        traj.times.push_back(t);
        for (const Probe& p : probes.probes) traj.series[p.name].push_back(p.eval(t, u));
        if (probes.snapshot_stride > 0 && (n % probes.snapshot_stride == 0 || n == nsteps)) {
            traj.snapshot_times.push_back(t);
            traj.snapshots.push_back(probes.snapshot_transform ? probes.snapshot_transform(u) : u);
        }
    };

    State u = u0;
    sample(0, u);
    for (long n = 1; n <= nsteps; ++n) {
        try {
            stepper.advance(u);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "at t=" << (n - 1) * run_cfg.dt << ": " << e.detail();
            throw Error(e.code(), os.str());
        }
        if (n % probes.stride == 0 || n == nsteps) sample(n, u);
    }
    traj.final_state = std::move(u);
    traj.steps = nsteps;
    traj.linear_iterations = stepper.linear_iterations();
    return traj;
}

Trajectory simulate_radial(const State& w0, const RadiusProfile& profile, const StepperConfig& cfg, double T,
                           const ProbeSet& probes) {
    if (w0.kind() != FieldKind::radial || w0.u2.kind() != FieldKind::radial)
        throw Error(ErrorCode::ShapeMismatch, "simulate_radial needs a radial state");
    return simulate(w0, profile, cfg, T, probes);
}

}  // namespace undulant
