#include "undulant/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace undulant {

using nlohmann::json;

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::operator_selftest: return "operator_selftest";
        case Scenario::pulse_speed: return "pulse_speed";
        case Scenario::symmetrization: return "symmetrization";
        case Scenario::effective_comparison: return "effective_comparison";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::ConfigError, (path.empty() ? "/" : path) + ": " + msg);
}

// Walks one JSON object, remembering which keys were read so leftovers can be rejected.
class Reader {
public:
    Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) fail(path_, "expected an object");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }
    std::string path(const std::string& key) const { return path_ + "/" + key; }

    const json* get(const std::string& key) {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = get(key)) {
            if (!v->is_number()) fail(path(key), "expected a number");
            out = v->get<double>();
        }
    }

    void optional_number(const std::string& key, std::optional<double>& out) {
        if (const json* v = get(key)) {
            if (v->is_null()) { out.reset(); return; }
            if (!v->is_number()) fail(path(key), "expected a number or null");
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, int& out) {
        if (const json* v = get(key)) {
            if (!v->is_number_integer()) fail(path(key), "expected an integer");
            const auto x = v->get<long long>();
            if (x < -2147483647LL || x > 2147483647LL) fail(path(key), "integer out of range");
            out = static_cast<int>(x);
        }
    }

    void seed(const std::string& key, std::uint64_t& out) {
        if (const json* v = get(key)) {
            if (!v->is_number_unsigned()) fail(path(key), "expected a non-negative integer");
            out = v->get<std::uint64_t>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (const json* v = get(key)) {
            if (!v->is_string()) fail(path(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void numbers(const std::string& key, std::vector<double>& out) {
        if (const json* v = get(key)) {
            if (!v->is_array()) fail(path(key), "expected an array of numbers");
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                if (!(*v)[i].is_number()) fail(path(key) + "/" + std::to_string(i), "expected a number");
                out.push_back((*v)[i].get<double>());
            }
        }
    }

    template <class E, std::size_t N>
    void choice(const std::string& key, E& out, const std::pair<const char*, E> (&options)[N]) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_string()) fail(path(key), "expected a string");
        const auto s = v->get<std::string>();
        for (const auto& [name, value] : options)
            if (s == name) { out = value; return; }
        std::string allowed;
        for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
        fail(path(key), "unknown value '" + s + "' (allowed: " + allowed + ")");
    }

    Reader child(const std::string& key) {
        const json* v = get(key);
        static const json empty = json::object();
        return Reader(v ? *v : empty, path(key));
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items())
            if (!seen_.count(key)) fail(path(key), "unknown key");
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

constexpr std::pair<const char*, Scenario> kScenarios[] = {
    {"operator_selftest", Scenario::operator_selftest},
    {"pulse_speed", Scenario::pulse_speed},
    {"symmetrization", Scenario::symmetrization},
    {"effective_comparison", Scenario::effective_comparison},
};
constexpr std::pair<const char*, ProfileKind> kProfiles[] = {
    {"constant", ProfileKind::constant},
    {"sinusoidal", ProfileKind::sinusoidal},
    {"gaussian_bump", ProfileKind::gaussian_bump},
    {"tabulated", ProfileKind::tabulated},
};
constexpr std::pair<const char*, Scheme> kSchemes[] = {
    {"imex_euler", Scheme::imex_euler},
    {"imex_cn", Scheme::imex_cn},
};
constexpr std::pair<const char*, LinearSolverKind> kSolvers[] = {
    {"cg", LinearSolverKind::cg},
    {"modal", LinearSolverKind::modal},
};

template <class E, std::size_t N>
const char* name_of(E value, const std::pair<const char*, E> (&options)[N]) {
    for (const auto& [name, v] : options)
        if (v == value) return name;
    return "unknown";
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    Reader root(doc, "");
    if (!root.has("scenario")) fail("/scenario", "required key missing");
    root.choice("scenario", cfg.scenario, kScenarios);

    {
        Reader r = root.child("params");
        r.number("alpha", cfg.params.alpha);
        r.number("epsilon", cfg.params.epsilon);
        r.number("gamma", cfg.params.gamma);
        r.finish();
    }
    {
        Reader r = root.child("grid");
        r.integer("nx", cfg.grid.nx);
        r.integer("ntheta", cfg.grid.ntheta);
        r.number("length", cfg.grid.length);
        r.finish();
    }
    {
        Reader r = root.child("profile");
        auto& p = cfg.profile;
        r.choice("kind", p.kind, kProfiles);
        r.number("base_radius", p.base_radius);
        r.number("undulation_amplitude", p.undulation_amplitude);
        if (r.has("undulation_wavenumber") && r.has("undulation_periods"))
            fail(r.path("undulation_periods"), "give either undulation_wavenumber or undulation_periods, not both");
        r.number("undulation_wavenumber", p.undulation_wavenumber);
        if (r.has("undulation_periods")) {
            double m = 0.0;
            r.number("undulation_periods", m);
            p.undulation_wavenumber = 2.0 * std::numbers::pi * m / cfg.grid.length;
        }
        r.number("bump_center", p.bump_center);
        r.number("bump_width", p.bump_width);
        r.number("bump_height", p.bump_height);
        r.numbers("samples", p.samples);
        r.finish();
    }
    {
        Reader r = root.child("stepper");
        auto& s = cfg.stepper;
        r.number("dt", s.dt);
        r.choice("scheme", s.scheme, kSchemes);
        r.number("tolerance", s.tolerance);
        r.integer("max_iterations", s.max_iterations);
        r.choice("solver", s.solver, kSolvers);
        r.finish();
    }
    root.number("T", cfg.T);
    {
        Reader r = root.child("initial");
        r.number("x_front", cfg.initial.x_front);
        r.number("amplitude", cfg.initial.amplitude);
        r.number("refractory_width", cfg.initial.refractory_width);
        r.number("refractory_level", cfg.initial.refractory_level);
        r.finish();
    }
    {
        Reader r = root.child("perturbation");
        r.integer("mode", cfg.perturbation.mode);
        r.number("amplitude", cfg.perturbation.amplitude);
        r.integer("component", cfg.perturbation.component);
        r.finish();
    }
    root.seed("seed", cfg.seed);
    root.string("output_dir", cfg.output_dir);
    root.integer("probe_stride", cfg.probe_stride);
    root.integer("snapshot_stride", cfg.snapshot_stride);
    {
        Reader r = root.child("pulse");
        r.number("level", cfg.pulse.level);
        r.numbers("alphas", cfg.pulse.alphas);
        std::vector<double> window{cfg.pulse.fit.window_begin, cfg.pulse.fit.window_end};
        r.numbers("window", window);
        if (window.size() != 2) fail(r.path("window"), "expected two fractions [begin, end]");
        cfg.pulse.fit.window_begin = window[0];
        cfg.pulse.fit.window_end = window[1];
        r.number("seam_fraction", cfg.pulse.fit.seam_fraction);
        r.finish();
    }
    {
        Reader r = root.child("comparison");
        r.number("sample_time", cfg.comparison.sample_time);
        r.numbers("amplitude_divisors", cfg.comparison.amplitude_divisors);
        r.finish();
    }
    {
        Reader r = root.child("selftest");
        r.integer("profiles", cfg.selftest.profiles);
        r.integer("pairs", cfg.selftest.pairs);
        r.finish();
    }
    {
        Reader r = root.child("combined");
        r.optional_number("weight", cfg.combined.weight);
        r.optional_number("K", cfg.combined.K);
        r.finish();
    }
    {
        Reader r = root.child("thresholds");
        auto& t = cfg.thresholds;
        r.number("speed_tolerance", t.speed_tolerance);
        r.number("rate_fraction", t.rate_fraction);
        r.number("envelope_constant_max", t.envelope_constant_max);
        r.number("envelope_margin", t.envelope_margin);
        r.number("decay_floor", t.decay_floor);
        r.number("slope_target", t.slope_target);
        r.number("slope_tolerance", t.slope_tolerance);
        r.number("radial_invariance_max", t.radial_invariance_max);
        r.number("symmetry_tolerance", t.symmetry_tolerance);
        r.number("eigenvalue_tolerance", t.eigenvalue_tolerance);
        r.finish();
    }
    root.finish();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["scenario"] = std::string(to_string(c.scenario));
    j["params"] = {{"alpha", c.params.alpha}, {"epsilon", c.params.epsilon}, {"gamma", c.params.gamma}};
    j["grid"] = {{"nx", c.grid.nx}, {"ntheta", c.grid.ntheta}, {"length", c.grid.length}};
    j["profile"] = {{"kind", name_of(c.profile.kind, kProfiles)},
                    {"base_radius", c.profile.base_radius},
                    {"undulation_amplitude", c.profile.undulation_amplitude},
                    {"undulation_wavenumber", c.profile.undulation_wavenumber},
                    {"bump_center", c.profile.bump_center},
                    {"bump_width", c.profile.bump_width},
                    {"bump_height", c.profile.bump_height},
                    {"samples", c.profile.samples}};
    j["stepper"] = {{"dt", c.stepper.dt},
                    {"scheme", name_of(c.stepper.scheme, kSchemes)},
                    {"tolerance", c.stepper.tolerance},
                    {"max_iterations", c.stepper.max_iterations},
                    {"solver", name_of(c.stepper.solver, kSolvers)}};
    j["T"] = c.T;
    j["initial"] = {{"x_front", c.initial.x_front},
                    {"amplitude", c.initial.amplitude},
                    {"refractory_width", c.initial.refractory_width},
                    {"refractory_level", c.initial.refractory_level}};
    j["perturbation"] = {{"mode", c.perturbation.mode},
                         {"amplitude", c.perturbation.amplitude},
                         {"component", c.perturbation.component}};
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["probe_stride"] = c.probe_stride;
    j["snapshot_stride"] = c.snapshot_stride;
    j["pulse"] = {{"level", c.pulse.level},
                  {"alphas", c.pulse.alphas},
                  {"window", {c.pulse.fit.window_begin, c.pulse.fit.window_end}},
                  {"seam_fraction", c.pulse.fit.seam_fraction}};
    j["comparison"] = {{"sample_time", c.comparison.sample_time},
                       {"amplitude_divisors", c.comparison.amplitude_divisors}};
    j["selftest"] = {{"profiles", c.selftest.profiles}, {"pairs", c.selftest.pairs}};
    j["combined"] = {{"weight", c.combined.weight ? json(*c.combined.weight) : json(nullptr)},
                     {"K", c.combined.K ? json(*c.combined.K) : json(nullptr)}};
    const auto& t = c.thresholds;
    j["thresholds"] = {{"speed_tolerance", t.speed_tolerance},
                       {"rate_fraction", t.rate_fraction},
                       {"envelope_constant_max", t.envelope_constant_max},
                       {"envelope_margin", t.envelope_margin},
                       {"decay_floor", t.decay_floor},
                       {"slope_target", t.slope_target},
                       {"slope_tolerance", t.slope_tolerance},
                       {"radial_invariance_max", t.radial_invariance_max},
                       {"symmetry_tolerance", t.symmetry_tolerance},
                       {"eigenvalue_tolerance", t.eigenvalue_tolerance}};
    return j;
}

std::string format(const Diagnostic& d) {
    std::string s = d.severity == Severity::error ? "error" : "warning";
    s += " " + (d.path.empty() ? std::string("/") : d.path) + " [" + std::string(to_string(d.code)) + "]: " + d.message;
    return s;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::error) return true;
    return false;
}

std::vector<Diagnostic> validate(const ExperimentConfig& c) {
    std::vector<Diagnostic> out;
    auto error = [&](std::string path, std::string msg, ErrorCode code = ErrorCode::ConfigError) {
        out.push_back({Severity::error, std::move(path), code, std::move(msg)});
    };
    auto warning = [&](std::string path, std::string msg) {
        out.push_back({Severity::warning, std::move(path), ErrorCode::ConfigError, std::move(msg)});
    };
    auto positive = [&](const char* path, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) error(path, "must be a positive finite number");
    };

    const bool dynamic = c.scenario != Scenario::operator_selftest;
    const bool surface = c.scenario == Scenario::symmetrization || c.scenario == Scenario::effective_comparison;

    if (!(c.params.alpha > 0.0 && c.params.alpha < 0.5)) error("/params/alpha", "must lie in (0, 1/2)");
    if (surface) {
        if (!(c.params.epsilon > 0.0)) error("/params/epsilon", "must be positive for Lyapunov diagnostics");
    } else if (!(c.params.epsilon >= 0.0)) {
        error("/params/epsilon", "must be non-negative");
    }
    if (!(c.params.gamma >= 0.0)) error("/params/gamma", "must be non-negative");

    bool grid_ok = true;
    if (c.grid.nx < 8) { error("/grid/nx", "must be at least 8"); grid_ok = false; }
    if (c.grid.ntheta < 8) { error("/grid/ntheta", "must be at least 8"); grid_ok = false; }
    if (!(c.grid.length > 0.0) || !std::isfinite(c.grid.length)) {
        error("/grid/length", "must be a positive finite number");
        grid_ok = false;
    }

    if (c.scenario != Scenario::operator_selftest) {
        positive("/profile/base_radius", c.profile.base_radius);
        if (c.profile.undulation_amplitude < 0.0) error("/profile/undulation_amplitude", "must be non-negative");
        if (c.profile.kind == ProfileKind::sinusoidal && grid_ok &&
            !sinusoid_is_periodic(c.profile.undulation_wavenumber, c.grid.length))
            error("/profile/undulation_wavenumber", "k L / (2 pi) must be an integer for a periodic profile",
                  ErrorCode::PeriodicityMismatch);
        if (c.profile.kind == ProfileKind::gaussian_bump) positive("/profile/bump_width", c.profile.bump_width);
        if (c.profile.kind == ProfileKind::tabulated && static_cast<int>(c.profile.samples.size()) != c.grid.nx)
            error("/profile/samples", "needs exactly grid.nx samples");
        if (grid_ok && !has_errors(out)) {
            try {
                (void)build_profile(c.profile, c.make_grid());
            } catch (const Error& e) {
                error("/profile", e.detail(), e.code());
            }
        }
    }

    if (dynamic) {
        positive("/stepper/dt", c.stepper.dt);
        if (!(c.stepper.tolerance > 0.0 && c.stepper.tolerance < 1e-4))
            error("/stepper/tolerance", "must lie in (0, 1e-4)");
        if (c.stepper.max_iterations < 1) error("/stepper/max_iterations", "must be at least 1");
        positive("/T", c.T);
        if (c.probe_stride < 1) error("/probe_stride", "must be at least 1");
        if (c.snapshot_stride < 0 || (c.probe_stride >= 1 && c.snapshot_stride % c.probe_stride != 0))
            error("/snapshot_stride", "must be 0 or a multiple of probe_stride");
        if (grid_ok && !(c.initial.x_front > 0.0 && c.initial.x_front < c.grid.length))
            error("/initial/x_front", "must lie strictly inside (0, L)");
        if (c.initial.refractory_width < 0.0 || (grid_ok && c.initial.refractory_width >= c.grid.length))
            error("/initial/refractory_width", "must lie in [0, L)");
    }

    if (surface) {
        if (c.perturbation.amplitude < 0.0) error("/perturbation/amplitude", "must be non-negative");
        if (c.perturbation.amplitude > 0.0 && c.perturbation.mode < 1)
            error("/perturbation/mode", "must be at least 1 for a non-radial perturbation");
        if (grid_ok && 2 * c.perturbation.mode > c.grid.ntheta)
            warning("/perturbation/mode", "mode exceeds the Nyquist limit of the theta grid");
        if (c.perturbation.component != 1 && c.perturbation.component != 2)
            error("/perturbation/component", "must be 1 or 2");
        if (c.combined.weight && !(*c.combined.weight > 0.0)) error("/combined/weight", "must be positive");
        if (c.combined.K && !(*c.combined.K > 0.0)) error("/combined/K", "must be positive");
        if (c.scenario == Scenario::symmetrization && c.stepper.dt > 0.0 && c.T > 0.0 &&
            c.T / c.stepper.dt / std::max(1, c.probe_stride) < 5.0)
            warning("/probe_stride", "fewer than 5 samples; the decay fit will fail");
    }

    if (c.scenario == Scenario::pulse_speed) {
        if (!(c.pulse.level > 0.0 && c.pulse.level < 1.0)) error("/pulse/level", "must lie in (0, 1)");
        for (std::size_t i = 0; i < c.pulse.alphas.size(); ++i) {
            const double a = c.pulse.alphas[i];
            if (!(a > 0.0 && a < 0.5)) error("/pulse/alphas/" + std::to_string(i), "must lie in (0, 1/2)");
        }
        const auto& f = c.pulse.fit;
        if (!(f.window_begin >= 0.0 && f.window_begin < f.window_end && f.window_end <= 1.0))
            error("/pulse/window", "needs 0 <= begin < end <= 1");
        if (!(f.seam_fraction >= 0.0 && f.seam_fraction < 0.5)) error("/pulse/seam_fraction", "must lie in [0, 1/2)");
        if (grid_ok && c.T > 0.0 && !has_errors(out)) {
            double fastest = 0.0;
            for (double a : c.pulse.alphas.empty() ? std::vector<double>{c.params.alpha} : c.pulse.alphas)
                fastest = std::max(fastest, theoretical_fast_speed(a));
            const double reach = c.initial.x_front + fastest * f.window_end * c.T;
            if (reach > (1.0 - f.seam_fraction) * c.grid.length)
                warning("/grid/length", "front is predicted to reach the seam zone inside the fit window");
            if (c.grid.length / c.grid.nx > 400.0 / 4096.0 * (1.0 + 1e-9))
                warning("/grid/nx", "dx is coarser than the L=400, Nx=4096 guidance for speed runs");
        }
    }

    if (c.scenario == Scenario::effective_comparison) {
        if (c.perturbation.amplitude == 0.0) error("/perturbation/amplitude", "must be positive for a scaling fit");
        if (!(c.comparison.sample_time > 0.0 && c.comparison.sample_time <= c.T))
            error("/comparison/sample_time", "must lie in (0, T]");
        const auto& dv = c.comparison.amplitude_divisors;
        if (dv.size() < 2) error("/comparison/amplitude_divisors", "needs at least two amplitudes");
        std::set<double> distinct(dv.begin(), dv.end());
        if (distinct.size() != dv.size()) error("/comparison/amplitude_divisors", "entries must be distinct");
        for (std::size_t i = 0; i < dv.size(); ++i)
            if (!(dv[i] >= 1.0)) error("/comparison/amplitude_divisors/" + std::to_string(i), "must be >= 1");
        if (c.stepper.dt > 0.0 && c.T > 0.0 && c.probe_stride >= 1) {
            const long steps = static_cast<long>(std::ceil(c.T / c.stepper.dt - 1e-12));
            const double sample_dt = c.T / steps * c.probe_stride;
            const double k = c.comparison.sample_time / sample_dt;
            if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k) &&
                std::abs(c.comparison.sample_time - c.T) > 1e-12 * c.T)
                error("/comparison/sample_time", "is not a sample time of the probe grid");
        }
    }

    if (c.scenario == Scenario::operator_selftest) {
        if (c.selftest.profiles < 1) error("/selftest/profiles", "must be at least 1");
        if (c.selftest.pairs < 1) error("/selftest/pairs", "must be at least 1");
    }

    const auto& t = c.thresholds;
    positive("/thresholds/speed_tolerance", t.speed_tolerance);
    positive("/thresholds/rate_fraction", t.rate_fraction);
    positive("/thresholds/envelope_constant_max", t.envelope_constant_max);
    if (!(t.envelope_margin >= 0.0)) error("/thresholds/envelope_margin", "must be non-negative");
    positive("/thresholds/decay_floor", t.decay_floor);
    positive("/thresholds/slope_tolerance", t.slope_tolerance);
    positive("/thresholds/radial_invariance_max", t.radial_invariance_max);
    positive("/thresholds/symmetry_tolerance", t.symmetry_tolerance);
    positive("/thresholds/eigenvalue_tolerance", t.eigenvalue_tolerance);
    if (c.output_dir.empty()) error("/output_dir", "must not be empty");
    return out;
}

}  // namespace undulant
