#include "undulant/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "undulant/errors.hpp"

namespace undulant {

Grid::Grid(int nx, int ntheta, double length) : nx_(nx), ntheta_(ntheta), length_(length) {
    if (nx < 8 || ntheta < 8)
        throw Error(ErrorCode::InvalidArgument, "grid needs nx >= 8 and ntheta >= 8");
    if (!(length > 0.0) || !std::isfinite(length))
        throw Error(ErrorCode::InvalidArgument, "grid length must be positive");
}

double RadiusProfile::max_radius() const { return *std::max_element(rho.begin(), rho.end()); }

double RadiusProfile::min_radius() const { return *std::min_element(rho.begin(), rho.end()); }

double RadiusProfile::slope_constant() const {
    double m = 0.0;
    for (double s : rho_x) m = std::max(m, s * s);
    return 1.0 + m;
}

double RadiusProfile::area() const {
    double s = 0.0;
    for (double w : sqrt_g) s += w;
    return s * grid.dx() * grid.dtheta() * grid.ntheta();
}

bool sinusoid_is_periodic(double wavenumber, double length, double rel_tol) {
    const double periods = wavenumber * length / (2.0 * std::numbers::pi);
    return std::abs(periods - std::round(periods)) <= rel_tol * std::max(1.0, std::abs(periods));
}

namespace {

struct Analytic {
    std::function<double(double)> rho;
    std::function<double(double)> rho_x;
};

Analytic analytic_profile(const ProfileSpec& spec, double length) {
    const double R = spec.base_radius;
    switch (spec.kind) {
    case ProfileKind::constant:
        return {[R](double) { return R; }, [](double) { return 0.0; }};
    case ProfileKind::sinusoidal: {
        const double d = spec.undulation_amplitude;
        const double k = spec.undulation_wavenumber;
        return {[=](double x) { return R * (1.0 + d * std::sin(k * x)); },
                [=](double x) { return R * d * k * std::cos(k * x); }};
    }
    case ProfileKind::gaussian_bump: {
        const double c = spec.bump_center, w = spec.bump_width, h = spec.bump_height;
        auto bump = [=](double x, bool derivative) {
            double s = 0.0;
            for (int m = -1; m <= 1; ++m) {
                const double z = (x - c - m * length) / w;
                const double e = std::exp(-z * z);
                s += derivative ? -2.0 * z / w * e : e;
            }
            return s;
        };
        return {[=](double x) { return R + h * bump(x, false); },
                [=](double x) { return h * bump(x, true); }};
    }
    case ProfileKind::tabulated:
        break;
    }
    return {};
}

}  // namespace

RadiusProfile build_profile(const ProfileSpec& spec, const Grid& grid) {
    const int nx = grid.nx();
    const double dx = grid.dx();
    RadiusProfile p{grid, {}, {}, {}, {}, {}, {}};
    p.rho.resize(nx);
    p.rho_x.resize(nx);
    p.face_a.resize(nx);

    if (spec.kind != ProfileKind::tabulated && !(spec.base_radius > 0.0))
        throw Error(ErrorCode::NonPositiveRadius, "base radius must be positive");

    if (spec.kind == ProfileKind::sinusoidal &&
        !sinusoid_is_periodic(spec.undulation_wavenumber, grid.length())) {
        std::ostringstream os;
        os << "wavenumber " << spec.undulation_wavenumber << " is not a multiple of 2pi/L (L="
           << grid.length() << ")";
        throw Error(ErrorCode::PeriodicityMismatch, os.str());
    }

    auto face_coefficient = [](double r, double rx) { return r / std::sqrt(1.0 + rx * rx); };

    if (spec.kind == ProfileKind::tabulated) {
        if (static_cast<int>(spec.samples.size()) != nx)
            throw Error(ErrorCode::ShapeMismatch, "tabulated profile needs one sample per x node");
        p.rho = spec.samples;
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1) % nx, im = (i + nx - 1) % nx;
            p.rho_x[i] = (p.rho[ip] - p.rho[im]) / (2.0 * dx);
        }
        for (int i = 0; i < nx; ++i) {
            const int ip = (i + 1) % nx;
            const double r = 0.5 * (p.rho[i] + p.rho[ip]);
            const double rx = (p.rho[ip] - p.rho[i]) / dx;
            p.face_a[i] = face_coefficient(r, rx);
        }
    } else {
        const Analytic a = analytic_profile(spec, grid.length());
        for (int i = 0; i < nx; ++i) {
            p.rho[i] = a.rho(grid.x(i));
            p.rho_x[i] = a.rho_x(grid.x(i));
            const double xm = grid.x(i) + 0.5 * dx;
            p.face_a[i] = face_coefficient(a.rho(xm), a.rho_x(xm));
        }
        if (spec.kind == ProfileKind::constant) std::fill(p.face_a.begin(), p.face_a.end(), spec.base_radius);
    }

    for (int i = 0; i < nx; ++i) {
        if (!(p.rho[i] > 0.0) || !std::isfinite(p.rho[i])) {
            std::ostringstream os;
            os << "rho(" << grid.x(i) << ") = " << p.rho[i];
            throw Error(ErrorCode::NonPositiveRadius, os.str());
        }
    }
    for (double a : p.face_a)
        if (!(a > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "face radius is not positive");

    p.g.resize(nx);
    p.sqrt_g.resize(nx);
    p.b.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const double s = 1.0 + p.rho_x[i] * p.rho_x[i];
        p.g[i] = s * p.rho[i] * p.rho[i];
        p.sqrt_g[i] = std::sqrt(p.g[i]);
        p.b[i] = s / p.sqrt_g[i];
    }
    return p;
}

}  // namespace undulant
