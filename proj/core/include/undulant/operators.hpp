#pragma once

#include "undulant/field.hpp"
#include "undulant/geometry.hpp"

namespace undulant {

/// FitzHugh-Nagumo parameters: threshold alpha in (0, 1/2), timescale ratio epsilon,
/// recovery coupling gamma.
struct FhnParams {
    double alpha = 0.25;
    double epsilon = 0.01;
    double gamma = 0.01;

    /// Throws DomainError unless 0 < alpha < 1/2 and epsilon, gamma >= 0.
    /// epsilon = 0 is the decoupled Nagumo limit; inner products need epsilon > 0.
    void validate() const;
    /// True when epsilon and gamma are outside the small-parameter regime.
    bool outside_small_regime() const { return epsilon > 0.1 || gamma > 0.1; }

    friend bool operator==(const FhnParams&, const FhnParams&) = default;
};

/// u = (u1, u2) on one grid, of one kind.
struct State {
    Field u1;
    Field u2;
    FhnParams params;

    static State zeros(FieldKind kind, const Grid& grid, const FhnParams& params);

    FieldKind kind() const { return u1.kind(); }
    bool all_finite() const { return u1.all_finite() && u2.all_finite(); }
};

// Laplacians in divergence form.
Field laplace_beltrami(const Field& f, const RadiusProfile& profile);
Field radial_laplacian(const Field& f, const RadiusProfile& profile);
/// Dispatches on the field kind.
Field laplacian(const Field& f, const RadiusProfile& profile);
/// out = Delta f; out must already have f's shape.
void apply_laplacian(const Field& f, const RadiusProfile& profile, Field& out);

/// Discrete n=1 azimuthal eigenvalue (2 - 2 cos dtheta) / dtheta^2.
double azimuthal_eigenvalue(const Grid& grid, int mode = 1);

/// Quadrature weight of node i: sqrt(g_i) dx, times dtheta for surface fields.
double node_weight(FieldKind kind, const RadiusProfile& profile, int i);

/// Unweighted L2(dmu) inner product and squared norm.
double l2_inner(const Field& f, const Field& g, const RadiusProfile& profile);
double l2_norm_sq(const Field& f, const RadiusProfile& profile);

/// <f, -Delta f> evaluated with the stencil.
double dirichlet_energy(const Field& f, const RadiusProfile& profile);
/// ||grad f||^2 evaluated from face differences (gradient form).
double gradient_energy(const Field& f, const RadiusProfile& profile);
/// Azimuthal part only: sum (1+rho_x^2)/g |d_theta f|^2 dmu. Zero for radial fields.
double azimuthal_energy(const Field& f, const RadiusProfile& profile);

/// <u, v> = int (u1 v1 + u2 v2 / epsilon) dmu.
double inner_product(const State& u, const State& v, const RadiusProfile& profile);
/// ||u||_{1,0}^2 = <u1, -Delta u1> + ||u2||^2 / epsilon.
double h10_norm_sq(const State& u, const RadiusProfile& profile);
/// Same norm with the gradient form for the first term.
double h10_norm_sq_gradient(const State& u, const RadiusProfile& profile);

/// Theta mean of a surface field.
Field project_radial(const Field& f);
/// Copies a radial field into every theta column.
Field lift(const Field& radial, const Grid& grid);
/// f - lift(project_radial(f)).
Field perp(const Field& f);
State project_radial(const State& u);
State perp(const State& u);
State lift(const State& u, const Grid& grid);

/// A u = ((Delta - alpha) u1 - u2, epsilon u1 - epsilon gamma u2).
State apply_A(const State& u, const RadiusProfile& profile);

/// f(v) = -v (v - alpha)(v - 1)
inline double cubic_f(double v, double alpha) { return -v * (v - alpha) * (v - 1.0); }
/// h(v) = -v^3 + (alpha + 1) v^2, so that f(v) = h(v) - alpha v.
inline double cubic_h(double v, double alpha) { return v * v * ((alpha + 1.0) - v); }
inline double cubic_h_prime(double v, double alpha) { return v * (2.0 * (alpha + 1.0) - 3.0 * v); }

Field apply_f(const Field& u1, double alpha);
Field apply_h(const Field& u1, double alpha);
/// N(u) = (h(u1), 0).
State nonlinearity(const State& u);

}  // namespace undulant
