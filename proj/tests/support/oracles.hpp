#pragma once

// Reference computations that share no code with the library: classical RK4, an explicit
// finite-difference Nagumo/FHN solver on a periodic line, and small numeric helpers.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
Vec<N> rk4_step(const std::function<Vec<N>(const Vec<N>&)>& f, const Vec<N>& y, double h) {
    auto add = [](Vec<N> a, const Vec<N>& b, double s) {
        for (std::size_t i = 0; i < N; ++i) a[i] += s * b[i];
        return a;
    };
    const Vec<N> k1 = f(y);
    const Vec<N> k2 = f(add(y, k1, h / 2));
    const Vec<N> k3 = f(add(y, k2, h / 2));
    const Vec<N> k4 = f(add(y, k3, h));
    Vec<N> out = y;
    for (std::size_t i = 0; i < N; ++i) out[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

/// Samples the RK4 solution of a scalar ODE at t = 0, h, 2h, ... up to n steps (sub-stepped).
inline std::vector<double> rk4_scalar(const std::function<double(double, double)>& f, double y0, double h, int n,
                                      int substeps = 20) {
    std::vector<double> out{y0};
    double y = y0, t = 0.0;
    const double k = h / substeps;
    for (int s = 0; s < n; ++s) {
        for (int m = 0; m < substeps; ++m) {
            const double k1 = f(t, y);
            const double k2 = f(t + k / 2, y + k / 2 * k1);
            const double k3 = f(t + k / 2, y + k / 2 * k2);
            const double k4 = f(t + k, y + k * k3);
            y += k / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            t += k;
        }
        out.push_back(y);
    }
    return out;
}

/// Forward-Euler finite differences for u_t = u_xx - u(u-a)(u-1) - v, v_t = eps(u - gamma v)
/// on a periodic line of length L. Returns (u, v) at time T.
struct LineFhn {
    std::vector<double> u, v;
};

inline LineFhn explicit_line_fhn(std::vector<double> u, std::vector<double> v, double L, double a, double eps,
                                 double gamma, double T) {
    const std::size_t n = u.size();
    const double dx = L / static_cast<double>(n);
    const int steps = static_cast<int>(std::ceil(T / (0.2 * dx * dx)));
    const double dt = T / steps;
    std::vector<double> un(n), vn(n);
    for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const double l = u[(i + n - 1) % n], r = u[(i + 1) % n];
            const double lap = (l - 2 * u[i] + r) / (dx * dx);
            un[i] = u[i] + dt * (lap - u[i] * (u[i] - a) * (u[i] - 1) - v[i]);
            vn[i] = v[i] + dt * eps * (u[i] - gamma * v[i]);
        }
        u.swap(un);
        v.swap(vn);
    }
    return {u, v};
}

/// Rightmost node-to-node downward crossing of `level`, linearly interpolated.
inline std::optional<double> rightmost_crossing(const std::vector<double>& u, double dx, double level) {
    std::optional<double> best;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i] >= level && u[i + 1] < level) best = (static_cast<double>(i) + (u[i] - level) / (u[i] - u[i + 1])) * dx;
    return best;
}

/// Ordinary least-squares slope of y against x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace oracle
