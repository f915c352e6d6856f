#include "undulant/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "undulant/diagnostics.hpp"
#include "undulant/geometry.hpp"
#include "undulant/operators.hpp"

namespace undulant {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ProfileSpec random_profile(std::mt19937_64& rng, int index, const Grid& grid) {
    std::uniform_real_distribution<double> radius(0.2, 1.0);
    std::uniform_real_distribution<double> amp(0.0, 0.3);
    std::uniform_int_distribution<int> periods(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ProfileSpec p;
    p.base_radius = radius(rng);
    switch (index % 3) {
        case 0:
            p.kind = ProfileKind::sinusoidal;
            p.undulation_amplitude = amp(rng);
            p.undulation_wavenumber = kTwoPi * periods(rng) / grid.length();
            break;
        case 1:
            p.kind = ProfileKind::gaussian_bump;
            p.bump_center = unit(rng) * grid.length();
            p.bump_width = (0.1 + 0.2 * unit(rng)) * grid.length();
            p.bump_height = amp(rng) * p.base_radius;
            break;
        default: {
            p.kind = ProfileKind::tabulated;
            const double a1 = amp(rng) / 2, a2 = amp(rng) / 2, phase = kTwoPi * unit(rng);
            for (int i = 0; i < grid.nx(); ++i) {
                const double s = kTwoPi * grid.x(i) / grid.length();
                p.samples.push_back(p.base_radius * (1.0 + a1 * std::sin(s + phase) + a2 * std::cos(2 * s)));
            }
        }
    }
    return p;
}

Field random_field(std::mt19937_64& rng, FieldKind kind, const Grid& grid) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Field f = kind == FieldKind::surface ? Field::surface(grid) : Field::radial(grid);
    for (double& v : f.values()) v = d(rng);
    return f;
}

std::string describe(int profile, int pair) {
    std::ostringstream os;
    os << "worst at profile " << profile << ", pair " << pair;
    return os.str();
}

}  // namespace

std::vector<Check> run_operator_suite(const OperatorSuiteOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    const Grid grid(opts.nx, opts.ntheta, opts.length);

    double sym_surface = 0.0, sym_radial = 0.0, neg_surface = -INFINITY, neg_radial = -INFINITY;
    double x1_paths = 0.0, h10_paths = 0.0;
    int sym_at[2] = {0, 0}, neg_at[2] = {0, 0};

    for (int p = 0; p < opts.profiles; ++p) {
        const RadiusProfile prof = build_profile(random_profile(rng, p, grid), grid);
        std::uniform_real_distribution<double> param(0.01, 0.4);
        const FhnParams params{param(rng), param(rng) / 10, param(rng)};
        for (int k = 0; k < opts.pairs; ++k) {
            for (FieldKind kind : {FieldKind::surface, FieldKind::radial}) {
                const Field f = random_field(rng, kind, grid);
                const Field g = random_field(rng, kind, grid);
                const Field lf = laplacian(f, prof), lg = laplacian(g, prof);
                const double scale = std::sqrt(l2_norm_sq(f, prof) * l2_norm_sq(g, prof));
                const double asym = std::abs(l2_inner(f, lg, prof) - l2_inner(lf, g, prof)) / scale;
                const double neg = l2_inner(f, lf, prof) / l2_norm_sq(f, prof);
                double& sym = kind == FieldKind::surface ? sym_surface : sym_radial;
                double& ng = kind == FieldKind::surface ? neg_surface : neg_radial;
                if (asym > sym) { sym = asym; sym_at[0] = p; sym_at[1] = k; }
                if (neg > ng) { ng = neg; neg_at[0] = p; neg_at[1] = k; }
            }
            const State u{random_field(rng, FieldKind::surface, grid), random_field(rng, FieldKind::surface, grid),
                          params};
            const double a = lyapunov_X1(u, prof), b = lyapunov_X1_operator(u, prof);
            x1_paths = std::max(x1_paths, std::abs(a - b) / std::abs(a));
            const double h = h10_norm_sq(u, prof), hg = h10_norm_sq_gradient(u, prof);
            h10_paths = std::max(h10_paths, std::abs(h - hg) / std::abs(h));
        }
    }

    // Straight cylinder: cos(theta) is an exact eigenfunction of the discrete operator.
    double eig_err = 0.0;
    std::uniform_real_distribution<double> radius(0.2, 2.0);
    for (int p = 0; p < opts.profiles; ++p) {
        ProfileSpec spec;
        spec.base_radius = radius(rng);
        const RadiusProfile prof = build_profile(spec, grid);
        const double dth = grid.dtheta();
        const double expected =
            -(2.0 - 2.0 * std::cos(dth)) / (dth * dth * spec.base_radius * spec.base_radius);
        Field f = Field::surface(grid);
        for (int i = 0; i < grid.nx(); ++i)
            for (int j = 0; j < grid.ntheta(); ++j) f(i, j) = std::cos(grid.theta(j));
        const Field lf = laplacian(f, prof);
        for (int i = 0; i < grid.nx(); ++i)
            for (int j = 0; j < grid.ntheta(); ++j)
                eig_err = std::max(eig_err, std::abs(lf(i, j) - expected * f(i, j)) / std::abs(expected));
        const double reported = -azimuthal_eigenvalue(grid, 1) / (spec.base_radius * spec.base_radius);
        eig_err = std::max(eig_err, std::abs(reported - expected) / std::abs(expected));
    }

    std::vector<Check> checks;
    checks.push_back(check_le("surface_laplacian_symmetry", sym_surface, opts.symmetry_tolerance,
                              "max |<f,Lg>-<Lf,g>| / (|f||g|); " + describe(sym_at[0], sym_at[1])));
    checks.push_back(check_le("radial_laplacian_symmetry", sym_radial, opts.symmetry_tolerance,
                              "max |<f,Lg>-<Lf,g>| / (|f||g|)"));
    checks.push_back(check_le("surface_laplacian_negativity", neg_surface, 0.0,
                              "max <f,Lf>/|f|^2; " + describe(neg_at[0], neg_at[1])));
    checks.push_back(check_le("radial_laplacian_negativity", neg_radial, 0.0, "max <f,Lf>/|f|^2"));
    checks.push_back(check_le("azimuthal_eigenvalue", eig_err, opts.eigenvalue_tolerance,
                              "relative error against -(2-2cos dtheta)/(dtheta^2 R^2)"));
    checks.push_back(check_le("X1_two_paths", x1_paths, opts.symmetry_tolerance,
                              "gradient form vs -1/2 <u, A u>, relative"));
    checks.push_back(check_le("h10_two_paths", h10_paths, opts.symmetry_tolerance,
                              "stencil form vs gradient form, relative"));
    return checks;
}

}  // namespace undulant
