#include "undulant/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "undulant/csv.hpp"
#include "undulant/diagnostics.hpp"
#include "undulant/dynamics.hpp"
#include "undulant/parallel.hpp"
#include "undulant/pulse.hpp"
#include "undulant/selftest.hpp"
#include "undulant/snapshot.hpp"

namespace undulant {

using nlohmann::json;
namespace fs = std::filesystem;

int worker_count(std::size_t jobs) {
    int cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("UNDULANT_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) throw Error(ErrorCode::ConfigError, "UNDULANT_THREADS must be a positive integer");
        cap = static_cast<int>(std::min<long>(v, 1 << 16));
    }
    return std::max(1, std::min(cap, static_cast<int>(jobs)));
}

json to_json(const Check& c) {
    return {{"name", c.name},
            {"passed", c.passed},
            {"value", c.value},
            {"threshold", c.threshold},
            {"relation", c.relation},
            {"detail", c.detail}};
}

int exit_code(const ExitReport& report) { return report.passed() ? 0 : 1; }

State surface_initial_data(const ExperimentConfig& cfg, const Grid& grid, double amplitude) {
    const auto& in = cfg.initial;
    const State w0 = step_initial_data(grid, cfg.params, in.x_front, in.amplitude, in.refractory_width,
                                       in.refractory_level);
    State u0 = lift(w0, grid);
    Field& target = cfg.perturbation.component == 2 ? u0.u2 : u0.u1;
    for (int i = 0; i < grid.nx(); ++i)
        for (int j = 0; j < grid.ntheta(); ++j)
            target(i, j) += amplitude * std::cos(cfg.perturbation.mode * grid.theta(j));
    return u0;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Context {
    const ExperimentConfig& cfg;
    const RunOptions& opts;
    fs::path out_dir;
    ExitReport report;

    void log(const std::string& msg) const {
        if (opts.log) opts.log(msg);
    }

    void write(const std::string& name, const std::vector<CsvColumn>& columns) {
        if (!opts.write_files) return;
        const fs::path p = out_dir / name;
        write_csv(p, columns);
        report.files.push_back(p);
    }

    // snapshots/<prefix>_NNNN.bin plus snapshots/<prefix>_index.csv mapping index to time
    void write_snapshots(const std::string& prefix, const Trajectory& tr) {
        if (!opts.write_files || tr.snapshots.empty()) return;
        const fs::path dir = out_dir / "snapshots";
        fs::create_directories(dir);
        std::vector<double> index;
        for (std::size_t k = 0; k < tr.snapshots.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "_%04zu.bin", k);
            write_snapshot(dir / (prefix + name), tr.snapshots[k], tr.snapshot_times[k]);
            index.push_back(static_cast<double>(k));
        }
        const fs::path p = dir / (prefix + "_index.csv");
        write_csv(p, {{"index", index}, {"t", tr.snapshot_times}});
        report.files.push_back(p);
    }
};

// Columns in the shared diagnostics order; names missing from `data` stay empty.
std::vector<CsvColumn> diagnostic_table(const std::map<std::string, std::vector<double>>& data) {
    std::vector<CsvColumn> cols;
    for (const auto& name : diagnostic_columns()) {
        auto it = data.find(name);
        cols.push_back({name, it == data.end() ? std::vector<double>{} : it->second});
    }
    return cols;
}

double sup(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v)
        if (std::isfinite(x)) m = std::max(m, x);
    return m;
}

std::vector<double> combined_series(const ExperimentConfig& cfg, const Trajectory& tr, double& weight, double& K) {
    weight = cfg.combined.weight.value_or(default_combined_weight(cfg.params));
    K = cfg.combined.K.value_or(sup(tr.column("avg_h10")));
    const auto& x0 = tr.column("X0");
    const auto& x1 = tr.column("X1");
    std::vector<double> xc(x0.size());
    for (std::size_t k = 0; k < xc.size(); ++k) xc[k] = combined_X(x0[k], x1[k], weight, K);
    return xc;
}

json rate_json(const RateFit& f) {
    return {{"rate", f.rate}, {"intercept", f.intercept}, {"t_start", f.t_start}, {"t_end", f.t_end},
            {"residual", f.residual}, {"floor", f.floor}, {"points", f.points}};
}

// ---------------------------------------------------------------------------------------------

void run_selftest(Context& ctx) {
    const auto& c = ctx.cfg;
    OperatorSuiteOptions o;
    o.profiles = c.selftest.profiles;
    o.pairs = c.selftest.pairs;
    o.nx = c.grid.nx;
    o.ntheta = c.grid.ntheta;
    o.length = c.grid.length;
    o.seed = c.seed;
    o.symmetry_tolerance = c.thresholds.symmetry_tolerance;
    o.eigenvalue_tolerance = c.thresholds.eigenvalue_tolerance;
    ctx.report.checks = run_operator_suite(o);

    if (ctx.opts.write_files) {
        const fs::path p = ctx.out_dir / "operator_suite.csv";
        fs::create_directories(ctx.out_dir);
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + p.string());
        out << "check,value,threshold,passed\n";
        for (const auto& ch : ctx.report.checks)
            out << ch.name << ',' << format_number(ch.value) << ',' << format_number(ch.threshold) << ','
                << (ch.passed ? 1 : 0) << '\n';
        ctx.report.files.push_back(p);
    }
    ctx.report.summary["results"] = {{"profiles", o.profiles}, {"pairs", o.pairs}};
}

// ---------------------------------------------------------------------------------------------

void run_symmetrization(Context& ctx) {
    const auto& c = ctx.cfg;
    const Grid grid = c.make_grid();
    const RadiusProfile prof = build_profile(c.profile, grid);
    const State u0 = surface_initial_data(c, grid, c.perturbation.amplitude);

    ProbeSet probes;
    probes.stride = c.probe_stride;
    probes.snapshot_stride = c.snapshot_stride;
    probes.probes = lyapunov_probes(prof);
    ctx.log("symmetrization: integrating to T=" + format_number(c.T));
    const Trajectory tr = simulate(u0, prof, c.stepper, c.T, probes);

    double weight = 0.0, K = 0.0;
    auto data = tr.series;
    data["t"] = tr.times;
    data["Xc"] = combined_series(c, tr, weight, K);
    ctx.write("symmetrization.csv", diagnostic_table(data));
    ctx.write_snapshots("symmetrization", tr);

    const auto& perp = tr.column("perp_h10");
    const auto& x0 = tr.column("X0");
    const auto& th = c.thresholds;
    const double nu = 0.5 * c.params.gamma * c.params.epsilon;
    const double r_star = prof.max_radius();
    const double slope_c = prof.slope_constant();
    const double sigma = 2.0 * std::min(slope_c / (4.0 * r_star * r_star), c.params.gamma * c.params.epsilon);

    json results = {{"nu", nu},
                    {"sigma", sigma},
                    {"r_star", r_star},
                    {"slope_constant", slope_c},
                    {"combined_weight", weight},
                    {"K", K},
                    {"perp_h10_initial", perp.front()},
                    {"perp_h10_final", perp.back()},
                    {"perp_h10_max", sup(perp)},
                    {"steps", tr.steps},
                    {"linear_iterations", tr.linear_iterations}};

    bool monotone = true;
    for (std::size_t k = 2; k < x0.size(); ++k)
        if (x0[k] > x0[k - 1]) monotone = false;
    results["X0_nonincreasing_after_first_sample"] = monotone;

    auto& checks = ctx.report.checks;
    if (c.perturbation.amplitude == 0.0) {
        checks.push_back(check_le("radial_invariance", sup(perp), th.radial_invariance_max, "max perp_h10 over the run"));
    } else {
        const RateFit fit = fit_rate(tr.times, perp, th.decay_floor);
        results["perp_h10_fit"] = rate_json(fit);
        checks.push_back(check_ge("decay_rate", fit.rate, th.rate_fraction * nu,
                                  "fitted rate of perp_h10 against rate_fraction * gamma eps / 2"));

        double C = 0.0;
        for (std::size_t k = 0; k < perp.size(); ++k)
            if (perp[k] > th.decay_floor) C = std::max(C, perp[k] * std::exp(nu * tr.times[k]) / perp.front());
        results["envelope_constant"] = C;
        checks.push_back(check_le("envelope_constant", C, th.envelope_constant_max,
                                  "max perp_h10(t) e^{nu t} / perp_h10(0)"));

        const EnvelopeReport env = check_decay_envelope(tr.times, x0, sigma, th.envelope_margin, std::nullopt,
                                                        th.decay_floor);
        results["X0_envelope"] = {{"passed", env.passed},
                                  {"max_ratio", env.max_ratio},
                                  {"checked", env.checked},
                                  {"violation_time", env.first_violation ? json(env.violation_time) : json(nullptr)}};
        Check ch = check_le("X0_envelope", env.max_ratio, 2.0 + th.envelope_margin,
                            "max X0(t) e^{sigma t} / X0(0) over samples above the floor");
        ch.passed = env.passed;
        checks.push_back(ch);
    }
    ctx.report.summary["results"] = results;
}

// ---------------------------------------------------------------------------------------------

struct PulseRun {
    double alpha;
    Trajectory traj;
    PulseMeasurement m;
};

void run_pulse(Context& ctx) {
    const auto& c = ctx.cfg;
    const Grid grid = c.make_grid();
    const RadiusProfile prof = build_profile(c.profile, grid);
    const std::vector<double> alphas = c.pulse.alphas.empty() ? std::vector<double>{c.params.alpha} : c.pulse.alphas;

    const int workers = worker_count(alphas.size());
    ctx.log("pulse_speed: " + std::to_string(alphas.size()) + " run(s) on " + std::to_string(workers) + " worker(s)");
    auto runs = parallel_map(
        alphas.size(),
        [&](std::size_t k) {
            FhnParams p = c.params;
            p.alpha = alphas[k];
            const auto& in = c.initial;
            const State w0 =
                step_initial_data(grid, p, in.x_front, in.amplitude, in.refractory_width, in.refractory_level);
            ProbeSet probes;
            probes.stride = c.probe_stride;
            probes.snapshot_stride = c.snapshot_stride;
            probes.probes.push_back(pulse_probe(grid, c.pulse.level));
            PulseRun r{alphas[k], simulate_radial(w0, prof, c.stepper, c.T, probes), {}};
            try {
                r.m = measure_speed(r.traj, c.pulse.level, c.pulse.fit);
            } catch (const Error& e) {
                throw Error(e.code(), "alpha=" + format_number(alphas[k]) + ": " + e.detail());
            }
            return r;
        },
        workers);

    json results = json::array();
    for (const auto& r : runs) {
        const std::string tag = "alpha" + format_number(r.alpha);
        std::map<std::string, std::vector<double>> data{{"t", r.traj.times}, {"pulse_x", r.traj.column("pulse_x")}};
        ctx.write("pulse_" + tag + ".csv", diagnostic_table(data));

        std::vector<double> ct, cx;
        const auto& px = r.traj.column("pulse_x");
        for (std::size_t k = 0; k < px.size(); ++k)
            if (std::isfinite(px[k])) {
                ct.push_back(r.traj.times[k]);
                cx.push_back(px[k]);
            }
        ctx.write("crossings_" + tag + ".csv", {{"t", ct}, {"x_front", cx}});
        ctx.write_snapshots("pulse_" + tag, r.traj);

        const double theory = theoretical_fast_speed(r.alpha);
        const double rel = r.m.speed / theory - 1.0;
        results.push_back({{"alpha", r.alpha},
                           {"speed", r.m.speed},
                           {"theory", theory},
                           {"relative_error", rel},
                           {"intercept", r.m.intercept},
                           {"residual", r.m.residual},
                           {"window", {r.m.t_start, r.m.t_end}},
                           {"crossings_in_window", r.m.crossings.size()},
                           {"steps", r.traj.steps},
                           {"linear_iterations", r.traj.linear_iterations}});
        ctx.report.checks.push_back(check_le("speed_" + tag, std::abs(rel), c.thresholds.speed_tolerance,
                                             "|c / c_f - 1| with c_f = " + format_number(theory)));
    }
    ctx.report.summary["results"] = {{"runs", results}, {"level", c.pulse.level}};
}

// ---------------------------------------------------------------------------------------------

void run_comparison(Context& ctx) {
    const auto& c = ctx.cfg;
    const Grid grid = c.make_grid();
    const RadiusProfile prof = build_profile(c.profile, grid);
    const auto& divisors = c.comparison.amplitude_divisors;
    const std::size_t jobs = divisors.size() + 1;  // the last job is the effective radial run

    const int workers = worker_count(jobs);
    ctx.log("effective_comparison: " + std::to_string(jobs) + " run(s) on " + std::to_string(workers) + " worker(s)");
    auto trajs = parallel_map(
        jobs,
        [&](std::size_t k) {
            ProbeSet probes;
            probes.stride = c.probe_stride;
            probes.snapshot_stride = c.probe_stride;
            if (k == divisors.size()) {
                const auto& in = c.initial;
                const State w0 = step_initial_data(grid, c.params, in.x_front, in.amplitude, in.refractory_width,
                                                   in.refractory_level);
                return simulate_radial(w0, prof, c.stepper, c.T, probes);
            }
            probes.probes = lyapunov_probes(prof);
            probes.snapshot_transform = [](const State& u) { return project_radial(u); };
            const State u0 = surface_initial_data(c, grid, c.perturbation.amplitude / divisors[k]);
            return simulate(u0, prof, c.stepper, c.T, probes);
        },
        workers);
    const Trajectory& radial = trajs.back();

    const double t_star = c.comparison.sample_time;
    std::vector<double> log_delta, log_gap;
    json results = json::array();
    for (std::size_t k = 0; k < divisors.size(); ++k) {
        const Trajectory& tr = trajs[k];
        const double delta = c.perturbation.amplitude / divisors[k];
        const GapSeries gs = compare_average_to_effective(tr, radial, prof);
        if (gs.times.size() != tr.times.size())
            throw Error(ErrorCode::TimeGridMismatch, "gap series and probe series differ in length");

        double weight = 0.0, K = 0.0;
        auto data = tr.series;
        data["t"] = tr.times;
        data["Xc"] = combined_series(c, tr, weight, K);
        data["Y1"] = gs.Y1;
        data["gap_h10"] = gs.gap_h10;
        ctx.write("comparison_delta" + format_number(delta) + ".csv", diagnostic_table(data));

        double gap = kNaN;
        for (std::size_t s = 0; s < gs.times.size(); ++s)
            if (std::abs(gs.times[s] - t_star) <= 1e-9 * std::max(1.0, t_star)) gap = gs.gap_h10[s];
        if (!std::isfinite(gap))
            throw Error(ErrorCode::TimeGridMismatch, "no sample at t=" + format_number(t_star));
        if (gap > 0.0) {
            log_delta.push_back(std::log(delta));
            log_gap.push_back(std::log(gap));
        }
        results.push_back({{"delta", delta},
                           {"gap_h10_at_sample_time", gap},
                           {"perp_h10_initial", tr.column("perp_h10").front()},
                           {"avg_h10_sup", sup(tr.column("avg_h10"))},
                           {"Y1_max", sup(gs.Y1)},
                           {"growth_constant", minimal_growth_constant(gs.times, gs.Y1, tr.column("W"))},
                           {"combined_weight", weight},
                           {"K", K},
                           {"steps", tr.steps},
                           {"linear_iterations", tr.linear_iterations}});
    }

    double slope = kNaN;
    if (log_delta.size() >= 2) {
        const double n = static_cast<double>(log_delta.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < log_delta.size(); ++k) {
            sx += log_delta[k];
            sy += log_gap[k];
            sxx += log_delta[k] * log_delta[k];
            sxy += log_delta[k] * log_gap[k];
        }
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    const auto& th = c.thresholds;
    Check ch{"gap_scaling_slope", std::abs(slope - th.slope_target) <= th.slope_tolerance, slope, th.slope_tolerance,
             "|value - " + format_number(th.slope_target) + "| <=",
             "log-log slope of gap_h10 at t=" + format_number(t_star) + " against delta"};
    ctx.report.checks.push_back(ch);
    ctx.report.summary["results"] = {{"runs", results}, {"sample_time", t_star}, {"slope", slope}};
}

}  // namespace

ExitReport run(const ExperimentConfig& cfg, const RunOptions& opts) {
    const auto diags = validate(cfg);
    if (has_errors(diags)) {
        std::string msg = "config has errors:";
        for (const auto& d : diags)
            if (d.severity == Severity::error) msg += "\n  " + format(d);
        throw Error(ErrorCode::ConfigError, msg);
    }
    Context ctx{cfg, opts, opts.output_dir.value_or(fs::path(cfg.output_dir)), {}};
    for (const auto& d : diags) ctx.log(format(d));
    ctx.report.scenario = cfg.scenario;

    switch (cfg.scenario) {
        case Scenario::operator_selftest: run_selftest(ctx); break;
        case Scenario::symmetrization: run_symmetrization(ctx); break;
        case Scenario::pulse_speed: run_pulse(ctx); break;
        case Scenario::effective_comparison: run_comparison(ctx); break;
    }

    auto& s = ctx.report.summary;
    s["scenario"] = std::string(to_string(cfg.scenario));
    s["passed"] = ctx.report.passed();
    s["config"] = to_json(cfg);
    s["checks"] = json::array();
    for (const auto& ch : ctx.report.checks) s["checks"].push_back(to_json(ch));
    json warnings = json::array();
    for (const auto& d : diags) warnings.push_back(format(d));
    s["warnings"] = warnings;
    json files = json::array();
    for (const auto& f : ctx.report.files) files.push_back(f.filename().string());
    s["files"] = files;

    if (opts.write_files) {
        fs::create_directories(ctx.out_dir);
        const fs::path p = ctx.out_dir / "summary.json";
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + p.string());
        out << s.dump(2) << '\n';
        ctx.report.files.push_back(p);
    }
    return std::move(ctx.report);
}

}  // namespace undulant
