#include "undulant/pulse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "undulant/errors.hpp"

namespace undulant {

State step_initial_data(const Grid& grid, const FhnParams& params, double x_front, double amplitude,
                        double refractory_width, double refractory_level) {
    if (!(x_front > 0.0 && x_front < grid.length()))
        throw Error(ErrorCode::InvalidArgument, "x_front must lie strictly inside (0, L)");
    State s = State::zeros(FieldKind::radial, grid, params);
    const double width = 4.0 * grid.dx();
    for (int i = 0; i < grid.nx(); ++i) {
        const double x = grid.x(i);
        s.u1(i, 0) = amplitude * 0.5 * (1.0 - std::tanh((x - x_front) / width));
        if (refractory_width > 0.0 && x >= grid.length() - refractory_width) s.u2(i, 0) = refractory_level;
    }
    return s;
}

std::optional<double> front_position(const Field& u1, const Grid& grid, double level) {
    if (u1.kind() != FieldKind::radial) throw Error(ErrorCode::ShapeMismatch, "front_position needs a radial field");
    const int nx = u1.nx();
    std::optional<double> best;
    for (int i = 0; i + 1 < nx; ++i) {
        const double a = u1(i, 0), b = u1(i + 1, 0);
        if (a >= level && b < level) {
            const double x = grid.x(i) + (a - level) / (a - b) * grid.dx();
            if (!best || x > *best) best = x;
        }
    }
    return best;
}

Probe pulse_probe(const Grid& grid, double level) {
    return Probe{"pulse_x", [grid, level](double, const State& u) {
                     const Field w = u.kind() == FieldKind::radial ? u.u1 : project_radial(u.u1);
                     const auto x = front_position(w, grid, level);
                     return x ? *x : std::numeric_limits<double>::quiet_NaN();
                 }};
}

PulseMeasurement measure_speed(const std::vector<double>& times, const std::vector<double>& positions,
                               double domain_length, double level, const SpeedFitOptions& opts) {
    if (times.size() != positions.size() || times.empty())
        throw Error(ErrorCode::InvalidArgument, "time and position series must be non-empty and equally long");
    PulseMeasurement m;
    m.level = level;
    const double T = times.back();
    m.t_start = opts.window_begin * T;
    m.t_end = opts.window_end * T;
    const double seam = opts.seam_fraction * domain_length;
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (t < m.t_start || t > m.t_end) continue;
        const double x = positions[k];
        if (!std::isfinite(x)) {
            std::ostringstream os;
            os << "no level-" << level << " crossing at t=" << t;
            throw Error(ErrorCode::NoCrossing, os.str());
        }
        if (x < seam || x > domain_length - seam) {
            std::ostringstream os;
            os << "front at x=" << x << " is within " << seam << " of the periodic seam at t=" << t;
            throw Error(ErrorCode::WrapDetected, os.str());
        }
        m.crossings.emplace_back(t, x);
    }
    const std::size_t n = m.crossings.size();
    if (n < 2) throw Error(ErrorCode::NoCrossing, "fewer than two crossings inside the fit window");

    double tm = 0.0, xm = 0.0;
    for (const auto& [t, x] : m.crossings) {
        tm += t;
        xm += x;
    }
    tm /= n;
    xm /= n;
    double stt = 0.0, stx = 0.0;
    for (const auto& [t, x] : m.crossings) {
        stt += (t - tm) * (t - tm);
        stx += (t - tm) * (x - xm);
    }
    m.speed = stx / stt;
    m.intercept = xm - m.speed * tm;
    double ss = 0.0;
    for (const auto& [t, x] : m.crossings) {
        const double r = x - (m.intercept + m.speed * t);
        ss += r * r;
    }
    m.residual = std::sqrt(ss / n);
    return m;
}

PulseMeasurement measure_speed(const Trajectory& traj, double level, const SpeedFitOptions& opts) {
    return measure_speed(traj.times, traj.column("pulse_x"), traj.domain_length, level, opts);
}

double theoretical_fast_speed(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw Error(ErrorCode::DomainError, "alpha must lie in (0, 1/2)");
    return std::numbers::sqrt2 / 2.0 * (1.0 - 2.0 * alpha);
}

}  // namespace undulant
