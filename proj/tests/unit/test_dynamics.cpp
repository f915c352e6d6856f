#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "undulant/diagnostics.hpp"
#include "undulant/dynamics.hpp"
#include "undulant/errors.hpp"
#include "undulant/pulse.hpp"

using namespace undulant;

namespace {
constexpr double kPi = std::numbers::pi;

RadiusProfile wavy(const Grid& g, double R = 0.4) {
    ProfileSpec s;
    s.kind = ProfileKind::sinusoidal;
    s.base_radius = R;
    s.undulation_amplitude = 0.2;
    s.undulation_wavenumber = 2 * kPi / g.length();
    return build_profile(s, g);
}

RadiusProfile straight(const Grid& g, double R = 1.0) {
    ProfileSpec s;
    s.base_radius = R;
    return build_profile(s, g);
}

State smooth_surface(const Grid& g, const FhnParams& p) {
    State u = State::zeros(FieldKind::surface, g, p);
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ntheta(); ++j) {
            const double x = 2 * kPi * g.x(i) / g.length(), th = g.theta(j);
            u.u1(i, j) = 0.5 + 0.4 * std::sin(x) + 0.1 * std::cos(th) * std::cos(x);
            u.u2(i, j) = 0.1 * std::sin(th) + 0.05 * std::cos(x);
        }
    return u;
}

StepperConfig config(double dt, Scheme s, LinearSolverKind k = LinearSolverKind::cg) {
    StepperConfig c;
    c.dt = dt;
    c.scheme = s;
    c.solver = k;
    c.tolerance = 1e-12;
    return c;
}

double max_diff(const State& a, const State& b) {
    Field d1 = a.u1 - b.u1, d2 = a.u2 - b.u2;
    return std::max(d1.max_abs(), d2.max_abs());
}
}  // namespace

class Schemes : public ::testing::TestWithParam<Scheme> {};

TEST_P(Schemes, RestStateIsFixed) {
    Grid g(16, 8, 4.0);
    const State z = State::zeros(FieldKind::surface, g, {});
    for (double dt : {0.01, 0.5, 10.0}) {
        const State out = step(z, wavy(g), config(dt, GetParam()));
        EXPECT_EQ(out.u1.max_abs(), 0.0);
        EXPECT_EQ(out.u2.max_abs(), 0.0);
    }
}

TEST_P(Schemes, RadialDataStaysRadial) {
    Grid g(64, 16, 8.0);
    const auto p = wavy(g, 0.2);
    const FhnParams params{0.25, 0.01, 0.01};
    const State w = step_initial_data(g, params, 3.0);
    ProbeSet probes;
    probes.stride = 5;
    probes.probes = lyapunov_probes(p);
    for (auto kind : {LinearSolverKind::cg, LinearSolverKind::modal}) {
        const Trajectory tr = simulate(lift(w, g), p, config(0.1, GetParam(), kind), 5.0, probes);
        for (double v : tr.column("perp_h10")) EXPECT_LE(v, 1e-12);
    }
}

TEST_P(Schemes, RotationEquivariance) {
    Grid g(32, 16, 4.0);
    const auto p = wavy(g);
    const FhnParams params{0.2, 0.05, 0.3};
    const State u = smooth_surface(g, params);
    auto rotate = [&](const State& s, int by) {
        State r = s;
        for (int i = 0; i < g.nx(); ++i)
            for (int j = 0; j < g.ntheta(); ++j) {
                r.u1(i, (j + by) % g.ntheta()) = s.u1(i, j);
                r.u2(i, (j + by) % g.ntheta()) = s.u2(i, j);
            }
        return r;
    };
    const auto cfg = config(0.05, GetParam(), LinearSolverKind::modal);
    EXPECT_LT(max_diff(step(rotate(u, 5), p, cfg), rotate(step(u, p, cfg), 5)), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Both, Schemes, ::testing::Values(Scheme::imex_euler, Scheme::imex_cn));

TEST(Step, ConstantStateFollowsTheImexOdeUpdate) {
    Grid g(8, 8, 1.0);
    const FhnParams params{0.25, 0.1, 0.5};
    const double c1 = 0.7, c2 = 0.2, dt = 0.05;
    const State u{Field::surface(g, c1), Field::surface(g, c2), params};
    const State out = step(u, wavy(g), config(dt, Scheme::imex_euler));
    const double u1 = (c1 + dt * (cubic_h(c1, 0.25) - c2)) / (1 + dt * 0.25);
    const double u2 = (c2 + dt * 0.1 * u1) / (1 + dt * 0.1 * 0.5);
    for (std::size_t k = 0; k < out.u1.size(); ++k) {
        EXPECT_NEAR(out.u1[k], u1, 1e-12);
        EXPECT_NEAR(out.u2[k], u2, 1e-12);
    }
}

TEST(Step, ConstantStateMatchesRk4ToSecondOrderPerStep) {
    Grid g(8, 8, 1.0);
    const FhnParams params{0.25, 0.1, 0.5};
    const double c1 = 0.7, c2 = 0.2;
    const std::function<oracle::Vec<2>(const oracle::Vec<2>&)> rhs = [&](const oracle::Vec<2>& y) {
        return oracle::Vec<2>{cubic_f(y[0], 0.25) - y[1], 0.1 * (y[0] - 0.5 * y[1])};
    };
    for (Scheme s : {Scheme::imex_euler, Scheme::imex_cn}) {
        double prev = 0.0;
        for (double dt : {0.02, 0.01, 0.005}) {
            const State out = step({Field::surface(g, c1), Field::surface(g, c2), params}, straight(g), config(dt, s));
            const auto ref = oracle::rk4_step<2>(rhs, {c1, c2}, dt);
            const double err = std::max(std::abs(out.u1[0] - ref[0]), std::abs(out.u2[0] - ref[1]));
            EXPECT_LT(err, 2.0 * dt * dt);
            if (prev > 0.0) EXPECT_GT(prev / err, s == Scheme::imex_euler ? 3.5 : 7.0);
            prev = err;
        }
    }
}

TEST(Step, Errors) {
    Grid g(16, 8, 4.0);
    const FhnParams params{0.25, 0.1, 0.1};
    State u = State::zeros(FieldKind::surface, g, params);
    StepperConfig bad;
    bad.dt = -1.0;
    EXPECT_THROW(step(u, wavy(g), bad), Error);
    bad.dt = 0.1;
    bad.tolerance = 1e-3;
    EXPECT_THROW(step(u, wavy(g), bad), Error);

    for (double& v : u.u1.values()) v = 1e200;
    try {
        step(u, wavy(g), config(10.0, Scheme::imex_euler, LinearSolverKind::modal));
        FAIL() << "expected NonFiniteState";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFiniteState);
    }
}

TEST(Simulate, ErrorCarriesFailureTime) {
    Grid g(16, 8, 4.0);
    State u = State::zeros(FieldKind::radial, g, {0.25, 0.1, 0.1});
    for (double& v : u.u1.values()) v = 1e30;
    try {
        simulate(u, wavy(g), config(1.0, Scheme::imex_euler, LinearSolverKind::modal), 10.0, {});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFiniteState);
        EXPECT_NE(std::string(e.what()).find("at t="), std::string::npos);
    }
}

TEST(Simulate, SamplingGrid) {
    Grid g(16, 8, 4.0);
    const State w = State::zeros(FieldKind::radial, g, {});
    ProbeSet probes;
    probes.stride = 3;
    probes.probes.push_back({"one", [](double, const State&) { return 1.0; }});
    probes.snapshot_stride = 6;
    const Trajectory tr = simulate_radial(w, wavy(g), config(0.1, Scheme::imex_euler), 1.0, probes);
    // 10 steps: samples at steps 0, 3, 6, 9, 10.
    ASSERT_EQ(tr.times.size(), 5u);
    EXPECT_NEAR(tr.times[1], 0.3, 1e-12);
    EXPECT_NEAR(tr.times.back(), 1.0, 1e-12);
    EXPECT_EQ(tr.column("one").size(), 5u);
    ASSERT_EQ(tr.snapshot_times.size(), 3u);
    EXPECT_NEAR(tr.snapshot_times[1], 0.6, 1e-12);
    EXPECT_EQ(tr.steps, 10);
    for (std::size_t k = 1; k < tr.times.size(); ++k) EXPECT_GT(tr.times[k], tr.times[k - 1]);
    // dt is shrunk so that T is hit exactly.
    const Trajectory tr2 = simulate_radial(w, wavy(g), config(0.3, Scheme::imex_euler), 1.0, probes);
    EXPECT_EQ(tr2.steps, 4);
    EXPECT_NEAR(tr2.times.back(), 1.0, 1e-12);
}

TEST(Simulate, ZeroRadialDataStaysZero) {
    Grid g(16, 8, 4.0);
    const State w = State::zeros(FieldKind::radial, g, {});
    const Trajectory tr = simulate_radial(w, wavy(g), config(0.1, Scheme::imex_cn), 2.0, {});
    EXPECT_EQ(tr.final_state.u1.max_abs(), 0.0);
    EXPECT_THROW(simulate_radial(State::zeros(FieldKind::surface, g, {}), wavy(g), config(0.1, Scheme::imex_cn), 1.0, {}),
                 Error);
}

TEST(Simulate, Deterministic) {
    Grid g(32, 16, 4.0);
    const FhnParams params{0.2, 0.05, 0.3};
    const auto cfg = config(0.05, Scheme::imex_cn, LinearSolverKind::cg);
    const State a = simulate(smooth_surface(g, params), wavy(g), cfg, 1.0, {}).final_state;
    const State b = simulate(smooth_surface(g, params), wavy(g), cfg, 1.0, {}).final_state;
    EXPECT_TRUE(a.u1 == b.u1);
    EXPECT_TRUE(a.u2 == b.u2);
}

TEST(Simulate, RadialStepperMatchesSurfaceStepperOnStraightCylinder) {
    Grid g(64, 8, 16.0);
    const auto p = straight(g, 0.5);
    const FhnParams params{0.2, 0.05, 0.5};
    const State w = step_initial_data(g, params, 5.0);
    const auto cfg = config(0.05, Scheme::imex_euler, LinearSolverKind::cg);
    const State radial = simulate_radial(w, p, cfg, 5.0, {}).final_state;
    const State surface = simulate(lift(w, g), p, cfg, 5.0, {}).final_state;
    EXPECT_LT(max_diff(project_radial(surface), radial), 1e-9);
}

TEST(Simulate, LinearRunIsDissipative) {
    Grid g(32, 16, 4.0);
    const auto p = wavy(g);
    const FhnParams params{0.25, 0.1, 0.5};
    for (Scheme s : {Scheme::imex_euler, Scheme::imex_cn}) {
        auto cfg = config(0.05, s, LinearSolverKind::modal);
        cfg.nonlinear = false;
        ProbeSet probes;
        probes.probes.push_back({"norm", [&](double, const State& u) { return inner_product(u, u, p); }});
        const Trajectory tr = simulate(smooth_surface(g, params), p, cfg, 3.0, probes);
        const auto& n = tr.column("norm");
        for (std::size_t k = 1; k < n.size(); ++k) EXPECT_LE(n[k], n[k - 1] * (1 + 1e-13));
        EXPECT_LT(n.back(), n.front());
    }
}

TEST(Simulate, NagumoLimitMatchesExplicitReference) {
    // eps = 0 decouples u2; u1 follows scalar Nagumo and the front invades the rest state.
    Grid g(1000, 8, 100.0);
    const auto p = straight(g);
    const FhnParams params{0.25, 0.0, 0.3};
    const State w = step_initial_data(g, params, 30.0, 1.0, 30.0, 0.0);
    const double T = 40.0;
    const State out = simulate_radial(w, p, config(0.01, Scheme::imex_cn, LinearSolverKind::modal), T, {}).final_state;
    EXPECT_EQ(out.u2.max_abs(), 0.0);

    std::vector<double> u0(w.u1.values().begin(), w.u1.values().end());
    const auto ref = oracle::explicit_line_fhn(u0, std::vector<double>(u0.size(), 0.0), 100.0, 0.25, 0.0, 0.3, T);
    std::vector<double> u1(out.u1.values().begin(), out.u1.values().end());
    const auto xa = oracle::rightmost_crossing(u1, g.dx(), 0.5);
    const auto xb = oracle::rightmost_crossing(ref.u, g.dx(), 0.5);
    ASSERT_TRUE(xa && xb);
    EXPECT_NEAR(*xa, *xb, 0.05);
    EXPECT_GT(*xa - 30.0, 0.25 * 0.35 * T);  // invaded at a nonzero speed
}

TEST(DefaultDt, Examples) {
    Grid g(8, 8, 1.0);
    const State rest = State::zeros(FieldKind::radial, g, {0.25, 0.01, 0.01});
    EXPECT_DOUBLE_EQ(default_dt(rest), 0.1);
    State hot = rest;
    for (double& v : hot.u1.values()) v = 2.0;
    // h'(2) = 2 (2 (alpha + 1) - 3 * 2) = -7
    EXPECT_DOUBLE_EQ(default_dt(hot), 0.25 / 7.25);
}

TEST(Convergence, RichardsonOrders) {
    Grid g(32, 16, 10.0);
    const auto p = wavy(g, 0.5);
    const FhnParams params{0.25, 0.1, 0.5};
    for (Scheme s : {Scheme::imex_euler, Scheme::imex_cn}) {
        std::vector<State> sol;
        for (int k = 0; k < 4; ++k)
            sol.push_back(simulate(smooth_surface(g, params), p, config(0.05 / (1 << k), s, LinearSolverKind::modal),
                                   1.0, {}).final_state);
        auto gap = [&](int k) {
            const State d{sol[k].u1 - sol[k + 1].u1, sol[k].u2 - sol[k + 1].u2, params};
            return std::sqrt(h10_norm_sq(d, p));
        };
        const double order = std::log2(gap(1) / gap(2));
        EXPECT_NEAR(order, s == Scheme::imex_euler ? 1.0 : 2.0, s == Scheme::imex_euler ? 0.1 : 0.2);
    }
}
