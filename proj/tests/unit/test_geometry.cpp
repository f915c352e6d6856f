#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "undulant/errors.hpp"
#include "undulant/geometry.hpp"
#include "undulant/operators.hpp"

using namespace undulant;

namespace {
constexpr double kPi = std::numbers::pi;

ProfileSpec sinusoid(double R, double amp, double k) {
    ProfileSpec s;
    s.kind = ProfileKind::sinusoidal;
    s.base_radius = R;
    s.undulation_amplitude = amp;
    s.undulation_wavenumber = k;
    return s;
}
}  // namespace

TEST(Grid, SpacingAndExtent) {
    Grid g(32, 16, 8.0);
    EXPECT_DOUBLE_EQ(g.dx(), 0.25);
    EXPECT_DOUBLE_EQ(g.dtheta() * g.ntheta(), 2 * kPi);
    EXPECT_DOUBLE_EQ(g.x(4), 1.0);
}

TEST(Grid, RejectsTinyOrEmpty) {
    EXPECT_THROW(Grid(4, 16, 1.0), Error);
    EXPECT_THROW(Grid(16, 7, 1.0), Error);
    EXPECT_THROW(Grid(16, 16, 0.0), Error);
}

TEST(Profile, ConstantHalfRadius) {
    Grid g(16, 8, 4.0);
    ProfileSpec s;
    s.base_radius = 0.5;
    const auto p = build_profile(s, g);
    for (int i = 0; i < g.nx(); ++i) {
        EXPECT_EQ(p.rho[i], 0.5);
        EXPECT_EQ(p.rho_x[i], 0.0);
        EXPECT_DOUBLE_EQ(p.g[i], 0.25);
        EXPECT_DOUBLE_EQ(p.sqrt_g[i], 0.5);
        EXPECT_DOUBLE_EQ(p.face_a[i], 0.5);
        EXPECT_DOUBLE_EQ(p.b[i], 2.0);
    }
}

TEST(Profile, SinusoidAtOrigin) {
    Grid g(100, 8, 10.0);
    const auto p = build_profile(sinusoid(0.5, 0.2, 2 * kPi / 10), g);
    EXPECT_DOUBLE_EQ(p.rho[0], 0.5);
    EXPECT_NEAR(p.rho_x[0], 0.0628319, 1e-7);
    EXPECT_NEAR(p.g[0], 0.250987, 1e-6);
}

TEST(Profile, MetricIdentityHoldsEverywhere) {
    Grid g(64, 8, 6.0);
    ProfileSpec bump;
    bump.kind = ProfileKind::gaussian_bump;
    bump.base_radius = 0.4;
    bump.bump_center = 2.0;
    bump.bump_width = 0.7;
    bump.bump_height = 0.3;
    for (const auto& spec : {sinusoid(0.3, 0.25, 2 * kPi * 2 / 6), bump}) {
        const auto p = build_profile(spec, g);
        for (int i = 0; i < g.nx(); ++i) {
            EXPECT_NEAR(p.g[i] - (1 + p.rho_x[i] * p.rho_x[i]) * p.rho[i] * p.rho[i], 0.0, 1e-15);
            EXPECT_NEAR(p.sqrt_g[i] * p.sqrt_g[i], p.g[i], 1e-15);
            EXPECT_GT(p.sqrt_g[i], 0.0);
        }
    }
}

TEST(Profile, UnitCylinderGivesFlatLaplacian) {
    // rho = 1: the operator is d_xx + d_thetatheta with the plain 5-point stencil.
    Grid g(16, 8, 3.0);
    ProfileSpec s;
    const auto p = build_profile(s, g);
    Field f = Field::surface(g);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::sin(0.37 * k) + 0.1 * k;
    const Field lf = laplace_beltrami(f, p);
    const double dx2 = g.dx() * g.dx(), dt2 = g.dtheta() * g.dtheta();
    for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ntheta(); ++j) {
            const int ip = (i + 1) % g.nx(), im = (i + g.nx() - 1) % g.nx();
            const int jp = (j + 1) % g.ntheta(), jm = (j + g.ntheta() - 1) % g.ntheta();
            const double ref = (f(ip, j) - 2 * f(i, j) + f(im, j)) / dx2 + (f(i, jp) - 2 * f(i, j) + f(i, jm)) / dt2;
            EXPECT_NEAR(lf(i, j), ref, 1e-11 * (1 + std::abs(ref)));
        }
}

TEST(Profile, TabulatedDerivativeConvergesAtSecondOrder) {
    const double L = 5.0, k = 2 * kPi / L;
    double prev = 0.0;
    for (int n : {32, 64, 128}) {
        Grid g(n, 8, L);
        const auto exact = build_profile(sinusoid(0.6, 0.3, k), g);
        ProfileSpec tab;
        tab.kind = ProfileKind::tabulated;
        tab.samples = exact.rho;
        const auto approx = build_profile(tab, g);
        double err = 0.0;
        for (int i = 0; i < n; ++i) err = std::max(err, std::abs(approx.rho_x[i] - exact.rho_x[i]));
        if (prev > 0.0) EXPECT_NEAR(std::log2(prev / err), 2.0, 0.1);
        prev = err;
    }
}

TEST(Profile, NonPositiveRadius) {
    Grid g(32, 8, 4.0);
    try {
        build_profile(sinusoid(0.5, 1.2, 2 * kPi / 4), g);
        FAIL() << "expected NonPositiveRadius";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveRadius);
    }
    ProfileSpec c;
    c.base_radius = 0.0;
    EXPECT_THROW(build_profile(c, g), Error);
}

TEST(Profile, PeriodicityMismatch) {
    Grid g(32, 8, 4.0);
    try {
        build_profile(sinusoid(0.5, 0.1, 1.0), g);
        FAIL() << "expected PeriodicityMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PeriodicityMismatch);
    }
    EXPECT_TRUE(sinusoid_is_periodic(2 * kPi * 3 / 4, 4.0));
    EXPECT_FALSE(sinusoid_is_periodic(1.0, 4.0));
}

TEST(Profile, SummaryQuantities) {
    Grid g(64, 8, 4.0);
    const auto p = build_profile(sinusoid(0.5, 0.2, 2 * kPi / 4), g);
    EXPECT_NEAR(p.max_radius(), 0.6, 1e-12);
    EXPECT_NEAR(p.min_radius(), 0.4, 1e-12);
    const double slope = 0.5 * 0.2 * 2 * kPi / 4;
    EXPECT_NEAR(p.slope_constant(), 1 + slope * slope, 1e-12);
    ProfileSpec c;
    c.base_radius = 0.5;
    EXPECT_NEAR(build_profile(c, g).area(), 2 * kPi * 0.5 * 4.0, 1e-12);
}
