#include "undulant/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "undulant/errors.hpp"

namespace undulant {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double h1_norm_sq(const Field& f, const RadiusProfile& profile) {
    return gradient_energy(f, profile) + l2_norm_sq(f, profile);
}

}  // namespace

double lyapunov_X0(const State& u, const RadiusProfile& profile) {
    const State p = perp(u);
    return 0.5 * inner_product(p, p, profile);
}

double lyapunov_X1(const State& u, const RadiusProfile& profile) {
    const State p = perp(u);
    return 0.5 * (gradient_energy(p.u1, profile) + u.params.alpha * l2_norm_sq(p.u1, profile) +
                  u.params.gamma * l2_norm_sq(p.u2, profile));
}

double lyapunov_X1_operator(const State& u, const RadiusProfile& profile) {
    const State p = perp(u);
    return -0.5 * inner_product(p, apply_A(p, profile), profile);
}

double lyapunov_Y1(const State& ubar, const State& w, const RadiusProfile& profile) {
    if (ubar.kind() != FieldKind::radial || w.kind() != FieldKind::radial)
        throw Error(ErrorCode::ShapeMismatch, "lyapunov_Y1 compares radial states");
    require_same_shape(ubar.u1, w.u1, "lyapunov_Y1");
    const Field v1 = ubar.u1 - w.u1;
    const Field v2 = ubar.u2 - w.u2;
    const FhnParams& p = ubar.params;
    return 0.5 * (gradient_energy(v1, profile) + p.alpha * l2_norm_sq(v1, profile) +
                  p.gamma * l2_norm_sq(v2, profile));
}

double remainder_W(const State& u, const RadiusProfile& profile) {
    const double h2 = h1_norm_sq(perp(u.u1), profile);
    const double h4 = h2 * h2;
    return h4 + h4 * h4;
}

double perp_h10(const State& u, const RadiusProfile& profile) {
    return std::sqrt(std::max(0.0, h10_norm_sq(perp(u), profile)));
}

double average_h10(const State& u, const RadiusProfile& profile) {
    return radial_gap_h10(project_radial(u), profile);
}

double radial_gap_h10(const State& v, const RadiusProfile& profile) {
    if (v.kind() != FieldKind::radial) throw Error(ErrorCode::ShapeMismatch, "radial_gap_h10 needs a radial state");
    return std::sqrt(std::max(0.0, kTwoPi * h10_norm_sq(v, profile)));
}

double c2_constant(const FhnParams& p) { return (11.0 - 5.0 * p.epsilon * p.gamma * p.gamma) / 8.0; }

double default_combined_weight(const FhnParams& p) {
    if (!(p.gamma > 0.0)) throw Error(ErrorCode::DomainError, "combined functional needs gamma > 0");
    return 2.0 * c2_constant(p) / p.gamma;
}

std::vector<Probe> lyapunov_probes(const RadiusProfile& profile) {
    return {
        {"X0", [profile](double, const State& u) { return lyapunov_X0(u, profile); }},
        {"X1", [profile](double, const State& u) { return lyapunov_X1(u, profile); }},
        {"W", [profile](double, const State& u) { return remainder_W(u, profile); }},
        {"perp_h10", [profile](double, const State& u) { return perp_h10(u, profile); }},
        {"avg_h10", [profile](double, const State& u) { return average_h10(u, profile); }},
    };
}

RateFit fit_rate(const std::vector<double>& times, const std::vector<double>& values, double floor) {
    if (times.size() != values.size()) throw Error(ErrorCode::InvalidArgument, "fit_rate: series lengths differ");
    std::vector<double> ts, ls;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (values[k] > floor && std::isfinite(values[k])) {
            ts.push_back(times[k]);
            ls.push_back(std::log(values[k]));
        }
    }
    if (ts.size() < 5) {
        std::ostringstream os;
        os << "only " << ts.size() << " samples above the floor " << floor;
        throw Error(ErrorCode::InsufficientData, os.str());
    }
    const double n = static_cast<double>(ts.size());
    double tm = 0.0, lm = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        tm += ts[k];
        lm += ls[k];
    }
    tm /= n;
    lm /= n;
    double stt = 0.0, stl = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        stt += (ts[k] - tm) * (ts[k] - tm);
        stl += (ts[k] - tm) * (ls[k] - lm);
    }
    if (!(stt > 0.0)) throw Error(ErrorCode::InsufficientData, "fit_rate: samples share one time");
    RateFit fit;
    const double slope = stl / stt;
    fit.rate = -slope;
    fit.intercept = lm - slope * tm;
    double ss = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double r = ls[k] - (fit.intercept + slope * ts[k]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.t_start = ts.front();
    fit.t_end = ts.back();
    fit.floor = floor;
    fit.points = ts.size();
    return fit;
}

EnvelopeReport check_decay_envelope(const std::vector<double>& times, const std::vector<double>& values, double nu,
                                    double margin, std::optional<double> x0, double floor) {
    if (times.size() != values.size())
        throw Error(ErrorCode::InvalidArgument, "check_decay_envelope: series lengths differ");
    EnvelopeReport rep;
    std::optional<double> ref = x0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(values[k] > floor)) continue;
        if (!ref) ref = values[k];
        const double base = *ref * std::exp(-nu * times[k]);
        const double ratio = base > 0.0 ? values[k] / base : std::numeric_limits<double>::infinity();
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        ++rep.checked;
        if (values[k] > (2.0 + margin) * base && rep.passed) {
            rep.passed = false;
            rep.first_violation = k;
            rep.violation_time = times[k];
        }
    }
    return rep;
}

GrowthEnvelopeReport check_growth_envelope(const std::vector<double>& times, const std::vector<double>& Y,
                                           const std::vector<double>& W, double C, double horizon,
                                           std::optional<double> y0) {
    if (times.size() != Y.size() || times.size() != W.size())
        throw Error(ErrorCode::InvalidArgument, "check_growth_envelope: series lengths differ");
    GrowthEnvelopeReport rep;
    if (times.empty()) return rep;
    const double start = y0.value_or(Y.front());
    double wsup = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        wsup = std::max(wsup, W[k]);
        const double env = (start + wsup) * std::exp(C * times[k]);
        if (env > 1.0 || times[k] > horizon) break;
        rep.envelope.push_back(env);
        rep.validity_horizon = times[k];
        ++rep.checked;
        if (Y[k] > env && rep.passed) {
            rep.passed = false;
            rep.first_violation = k;
            rep.violation_time = times[k];
        }
    }
    return rep;
}

double minimal_growth_constant(const std::vector<double>& times, const std::vector<double>& Y,
                               const std::vector<double>& W) {
    if (times.size() != Y.size() || times.size() != W.size())
        throw Error(ErrorCode::InvalidArgument, "minimal_growth_constant: series lengths differ");
    if (times.empty()) return 0.0;
    double wsup = 0.0, C = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        wsup = std::max(wsup, W[k]);
        const double base = Y.front() + wsup;
        if (Y[k] <= base) continue;
        if (!(times[k] > 0.0) || !(base > 0.0)) return std::numeric_limits<double>::infinity();
        C = std::max(C, std::log(Y[k] / base) / times[k]);
    }
    return C;
}

GapSeries compare_average_to_effective(const Trajectory& surface, const Trajectory& radial,
                                       const RadiusProfile& profile) {
    const auto& ts = surface.snapshot_times;
    const auto& tr = radial.snapshot_times;
    if (ts.size() != tr.size() || ts.empty())
        throw Error(ErrorCode::TimeGridMismatch, "trajectories carry different numbers of snapshots");
    GapSeries out;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (std::abs(ts[k] - tr[k]) > 1e-9 * std::max(1.0, std::abs(ts[k]))) {
            std::ostringstream os;
            os << "snapshot " << k << " at t=" << ts[k] << " vs t=" << tr[k];
            throw Error(ErrorCode::TimeGridMismatch, os.str());
        }
        const State ubar = project_radial(surface.snapshots[k]);
        const State& w = radial.snapshots[k];
        if (w.kind() != FieldKind::radial) throw Error(ErrorCode::ShapeMismatch, "effective run must be radial");
        const State v{ubar.u1 - w.u1, ubar.u2 - w.u2, ubar.params};
        out.times.push_back(ts[k]);
        out.gap_h10.push_back(radial_gap_h10(v, profile));
        out.Y1.push_back(lyapunov_Y1(ubar, w, profile));
    }
    return out;
}

}  // namespace undulant
