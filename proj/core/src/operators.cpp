#include "undulant/operators.hpp"

#include <cmath>
#include <string>

#include "undulant/errors.hpp"
#include "undulant/summation.hpp"

namespace undulant {

void FhnParams::validate() const {
    if (!(alpha > 0.0 && alpha < 0.5)) throw Error(ErrorCode::DomainError, "alpha must lie in (0, 1/2)");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::DomainError, "epsilon must be non-negative");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error(ErrorCode::DomainError, "gamma must be non-negative");
}

State State::zeros(FieldKind kind, const Grid& grid, const FhnParams& params) {
    Field z = kind == FieldKind::surface ? Field::surface(grid) : Field::radial(grid);
    return State{z, z, params};
}

namespace {

void require_profile_shape(const Field& f, const RadiusProfile& profile, const char* where) {
    const Grid& grid = profile.grid;
    const bool ok = f.nx() == grid.nx() &&
                    (f.kind() == FieldKind::radial ? f.ntheta() == 1 : f.ntheta() == grid.ntheta());
    if (!ok) throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": field does not match the profile grid");
}

void require_kind(const Field& f, FieldKind kind, const char* where) {
    if (f.kind() != kind) throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": wrong field kind");
}

void require_compatible(const State& u, const State& v, const char* where) {
    require_same_shape(u.u1, v.u1, where);
    require_same_shape(u.u2, v.u2, where);
    require_same_shape(u.u1, u.u2, where);
    if (u.params.epsilon != v.params.epsilon)
        throw Error(ErrorCode::ParamMismatch, std::string(where) + ": states carry different epsilon");
}

double inverse_epsilon(const FhnParams& p) {
    if (!(p.epsilon > 0.0))
        throw Error(ErrorCode::DomainError, "the weighted inner product needs epsilon > 0");
    return 1.0 / p.epsilon;
}

}  // namespace

void apply_laplacian(const Field& f, const RadiusProfile& profile, Field& out) {
    require_profile_shape(f, profile, "laplacian");
    require_same_shape(f, out, "laplacian");
    const int nx = f.nx();
    const int nt = f.ntheta();
    const double idx2 = 1.0 / (profile.grid.dx() * profile.grid.dx());
    const double idt2 = 1.0 / (profile.grid.dtheta() * profile.grid.dtheta());
    const bool surface = f.kind() == FieldKind::surface;

    for (int i = 0; i < nx; ++i) {
        const int ip = i + 1 == nx ? 0 : i + 1;
        const int im = i == 0 ? nx - 1 : i - 1;
        const double ap = profile.face_a[i] * idx2;
        const double am = profile.face_a[im] * idx2;
        const double bt = profile.b[i] * idt2;
        const double inv_sg = 1.0 / profile.sqrt_g[i];
        for (int j = 0; j < nt; ++j) {
            const double c = f(i, j);
            double v = ap * (f(ip, j) - c) - am * (c - f(im, j));
            if (surface) {
                const int jp = j + 1 == nt ? 0 : j + 1;
                const int jm = j == 0 ? nt - 1 : j - 1;
                v += bt * (f(i, jp) - 2.0 * c + f(i, jm));
            }
            out(i, j) = v * inv_sg;
        }
    }
}

Field laplacian(const Field& f, const RadiusProfile& profile) {
    Field out = Field::like(f);
    apply_laplacian(f, profile, out);
    return out;
}

Field laplace_beltrami(const Field& f, const RadiusProfile& profile) {
    require_kind(f, FieldKind::surface, "laplace_beltrami");
    return laplacian(f, profile);
}

Field radial_laplacian(const Field& f, const RadiusProfile& profile) {
    require_kind(f, FieldKind::radial, "radial_laplacian");
    return laplacian(f, profile);
}

double azimuthal_eigenvalue(const Grid& grid, int mode) {
    const double dt = grid.dtheta();
    return (2.0 - 2.0 * std::cos(mode * dt)) / (dt * dt);
}

double node_weight(FieldKind kind, const RadiusProfile& profile, int i) {
    const double w = profile.sqrt_g[i] * profile.grid.dx();
    return kind == FieldKind::surface ? w * profile.grid.dtheta() : w;
}

double l2_inner(const Field& f, const Field& g, const RadiusProfile& profile) {
    require_profile_shape(f, profile, "l2_inner");
    require_same_shape(f, g, "l2_inner");
    const int nt = f.ntheta();
    const FieldKind kind = f.kind();
    return pairwise_sum(f.size(), [&](std::size_t k) {
        return f[k] * g[k] * node_weight(kind, profile, static_cast<int>(k / nt));
    });
}

double l2_norm_sq(const Field& f, const RadiusProfile& profile) { return l2_inner(f, f, profile); }

double dirichlet_energy(const Field& f, const RadiusProfile& profile) {
    return -l2_inner(f, laplacian(f, profile), profile);
}

double gradient_energy(const Field& f, const RadiusProfile& profile) {
    require_profile_shape(f, profile, "gradient_energy");
    const int nx = f.nx();
    const int nt = f.ntheta();
    const double dx = profile.grid.dx();
    const double dth = profile.grid.dtheta();
    const bool surface = f.kind() == FieldKind::surface;
    const double measure = surface ? dx * dth : dx;
    return pairwise_sum(f.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k / nt);
        const int j = static_cast<int>(k % nt);
        const int ip = i + 1 == nx ? 0 : i + 1;
        const double fx = (f(ip, j) - f(i, j)) / dx;
        double e = profile.face_a[i] * fx * fx;
        if (surface) {
            const int jp = j + 1 == nt ? 0 : j + 1;
            const double ft = (f(i, jp) - f(i, j)) / dth;
            e += profile.b[i] * ft * ft;
        }
        return e * measure;
    });
}

double azimuthal_energy(const Field& f, const RadiusProfile& profile) {
    require_profile_shape(f, profile, "azimuthal_energy");
    if (f.kind() == FieldKind::radial) return 0.0;
    const int nt = f.ntheta();
    const double dx = profile.grid.dx();
    const double dth = profile.grid.dtheta();
    return pairwise_sum(f.size(), [&](std::size_t k) {
        const int i = static_cast<int>(k / nt);
        const int j = static_cast<int>(k % nt);
        const int jp = j + 1 == nt ? 0 : j + 1;
        const double ft = (f(i, jp) - f(i, j)) / dth;
        return profile.b[i] * ft * ft * dx * dth;
    });
}

double inner_product(const State& u, const State& v, const RadiusProfile& profile) {
    require_compatible(u, v, "inner_product");
    require_profile_shape(u.u1, profile, "inner_product");
    const double ie = inverse_epsilon(u.params);
    const int nt = u.u1.ntheta();
    const FieldKind kind = u.kind();
    return pairwise_sum(u.u1.size(), [&](std::size_t k) {
        const double w = node_weight(kind, profile, static_cast<int>(k / nt));
        return (u.u1[k] * v.u1[k] + ie * u.u2[k] * v.u2[k]) * w;
    });
}

double h10_norm_sq(const State& u, const RadiusProfile& profile) {
    return dirichlet_energy(u.u1, profile) + inverse_epsilon(u.params) * l2_norm_sq(u.u2, profile);
}

double h10_norm_sq_gradient(const State& u, const RadiusProfile& profile) {
    return gradient_energy(u.u1, profile) + inverse_epsilon(u.params) * l2_norm_sq(u.u2, profile);
}

Field project_radial(const Field& f) {
    if (f.kind() == FieldKind::radial) return f;
    const int nt = f.ntheta();
    Field r = Field::radial(f.nx());
    for (int i = 0; i < f.nx(); ++i) {
        const auto row = f.row(i);
        r(i, 0) = pairwise_sum(static_cast<std::size_t>(nt), [&](std::size_t j) { return row[j]; }) / nt;
    }
    return r;
}

Field lift(const Field& radial, const Grid& grid) {
    require_kind(radial, FieldKind::radial, "lift");
    if (radial.nx() != grid.nx()) throw Error(ErrorCode::ShapeMismatch, "lift: nx differs from grid");
    Field out = Field::surface(grid);
    for (int i = 0; i < grid.nx(); ++i)
        for (int j = 0; j < grid.ntheta(); ++j) out(i, j) = radial(i, 0);
    return out;
}

Field perp(const Field& f) {
    if (f.kind() == FieldKind::radial) return Field::like(f);
    const Field mean = project_radial(f);
    Field out = f;
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < f.ntheta(); ++j) out(i, j) -= mean(i, 0);
    return out;
}

State project_radial(const State& u) { return State{project_radial(u.u1), project_radial(u.u2), u.params}; }

State perp(const State& u) { return State{perp(u.u1), perp(u.u2), u.params}; }

State lift(const State& u, const Grid& grid) { return State{lift(u.u1, grid), lift(u.u2, grid), u.params}; }

State apply_A(const State& u, const RadiusProfile& profile) {
    require_same_shape(u.u1, u.u2, "apply_A");
    State out{laplacian(u.u1, profile), Field::like(u.u2), u.params};
    const double a = u.params.alpha, e = u.params.epsilon, g = u.params.gamma;
    for (std::size_t k = 0; k < u.u1.size(); ++k) {
        out.u1[k] += -a * u.u1[k] - u.u2[k];
        out.u2[k] = e * u.u1[k] - e * g * u.u2[k];
    }
    return out;
}

Field apply_f(const Field& u1, double alpha) {
    Field out = Field::like(u1);
    for (std::size_t k = 0; k < u1.size(); ++k) out[k] = cubic_f(u1[k], alpha);
    return out;
}

Field apply_h(const Field& u1, double alpha) {
    Field out = Field::like(u1);
    for (std::size_t k = 0; k < u1.size(); ++k) out[k] = cubic_h(u1[k], alpha);
    return out;
}

State nonlinearity(const State& u) { return State{apply_h(u.u1, u.params.alpha), Field::like(u.u2), u.params}; }

}  // namespace undulant
