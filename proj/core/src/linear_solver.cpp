#include "undulant/linear_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "undulant/errors.hpp"
#include "undulant/operators.hpp"
#include "undulant/summation.hpp"

namespace undulant {

ShiftedSolver::ShiftedSolver(const RadiusProfile& profile, double shift, double alpha, LinearSolverKind kind,
                             double tolerance, int max_iterations)
    : profile_(profile),
      shift_(shift),
      alpha_(alpha),
      kind_(kind),
      tolerance_(tolerance),
      max_iterations_(max_iterations) {
    if (!(shift > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver shift must be positive");
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "solver tolerance must be positive");
    const Grid& grid = profile.grid;
    const int nx = grid.nx();
    const double idx2 = 1.0 / (grid.dx() * grid.dx());
    const double idt2 = 1.0 / (grid.dtheta() * grid.dtheta());

    weight_.resize(nx);
    inv_diag_.resize(nx);
    inv_diag_radial_.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const int im = i == 0 ? nx - 1 : i - 1;
        weight_[i] = profile.sqrt_g[i] * grid.dx();
        const double xpart = (profile.face_a[i] + profile.face_a[im]) * idx2 / profile.sqrt_g[i];
        const double tpart = 2.0 * profile.b[i] * idt2 / profile.sqrt_g[i];
        const double base = 1.0 + shift * alpha + shift * xpart;
        inv_diag_radial_[i] = 1.0 / base;
        inv_diag_[i] = 1.0 / (base + shift * tpart);
    }
    if (kind_ == LinearSolverKind::modal) factor_modes();
}

void ShiftedSolver::apply(const Field& x, Field& y) const {
    apply_laplacian(x, profile_, y);
    const double c0 = 1.0 + shift_ * alpha_;
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = c0 * x[k] - shift_ * y[k];
}

SolveStats ShiftedSolver::solve(const Field& rhs, Field& x) const {
    require_same_shape(rhs, x, "ShiftedSolver::solve");
    return kind_ == LinearSolverKind::cg ? solve_cg(rhs, x) : solve_modal(rhs, x);
}

SolveStats ShiftedSolver::solve_cg(const Field& rhs, Field& x) const {
    const int nt = rhs.ntheta();
    const bool surface = rhs.kind() == FieldKind::surface;
    const std::vector<double>& inv_diag = surface ? inv_diag_ : inv_diag_radial_;
    const std::size_t n = rhs.size();

    auto dot = [&](const Field& a, const Field& b) {
        return pairwise_sum(n, [&](std::size_t k) { return a[k] * b[k] * weight_[k / nt]; });
    };

    const double rhs_norm = std::sqrt(dot(rhs, rhs));
    if (rhs_norm == 0.0) {
        x = Field::like(rhs);
        return {0, 0.0};
    }

    Field r = Field::like(rhs);
    Field z = Field::like(rhs);
    Field p = Field::like(rhs);
    Field q = Field::like(rhs);

    apply(x, q);
    for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - q[k];
    double rnorm = std::sqrt(dot(r, r));
    if (rnorm <= tolerance_ * rhs_norm) return {0, rnorm / rhs_norm};

    for (std::size_t k = 0; k < n; ++k) z[k] = inv_diag[k / nt] * r[k];
    p = z;
    double rz = dot(r, z);

    for (int it = 1; it <= max_iterations_; ++it) {
        apply(p, q);
        const double pq = dot(p, q);
        const double step = rz / pq;
        x.axpy(step, p);
        r.axpy(-step, q);
        rnorm = std::sqrt(dot(r, r));
        if (!std::isfinite(rnorm)) break;
        if (rnorm <= tolerance_ * rhs_norm) return {it, rnorm / rhs_norm};
        for (std::size_t k = 0; k < n; ++k) z[k] = inv_diag[k / nt] * r[k];
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    std::ostringstream os;
    os << "conjugate gradients stopped after " << max_iterations_ << " iterations at relative residual "
       << rnorm / rhs_norm << " (tolerance " << tolerance_ << ")";
    throw Error(ErrorCode::LinearSolveDiverged, os.str());
}

void ShiftedSolver::factor_modes() {
    const Grid& grid = profile_.grid;
    const int nx = grid.nx();
    const int nt = grid.ntheta();
    ntheta_ = nt;
    const double idx2 = 1.0 / (grid.dx() * grid.dx());

    // Real orthonormal Fourier basis in theta.
    basis_.assign(static_cast<std::size_t>(nt) * nt, 0.0);
    mode_eigenvalue_.assign(nt, 0.0);
    auto set_row = [&](int k, auto fn) {
        for (int j = 0; j < nt; ++j) basis_[static_cast<std::size_t>(k) * nt + j] = fn(grid.theta(j), j);
    };
    int k = 0;
    set_row(k++, [&](double, int) { return 1.0 / std::sqrt(static_cast<double>(nt)); });
    const double s2 = std::sqrt(2.0 / nt);
    for (int m = 1; 2 * m < nt; ++m) {
        const double mu = azimuthal_eigenvalue(grid, m);
        mode_eigenvalue_[k] = mu;
        set_row(k++, [&](double th, int) { return s2 * std::cos(m * th); });
        mode_eigenvalue_[k] = mu;
        set_row(k++, [&](double th, int) { return s2 * std::sin(m * th); });
    }
    if (nt % 2 == 0) {
        mode_eigenvalue_[k] = azimuthal_eigenvalue(grid, nt / 2);
        set_row(k++, [&](double, int j) { return (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(nt)); });
    }

    auto build = [&](double mu) {
        ModeFactor f;
        f.lower.resize(nx);
        f.diag.resize(nx);
        f.upper.resize(nx);
        for (int i = 0; i < nx; ++i) {
            const int im = i == 0 ? nx - 1 : i - 1;
            const double isg = 1.0 / profile_.sqrt_g[i];
            f.lower[i] = -shift_ * profile_.face_a[im] * idx2 * isg;
            f.upper[i] = -shift_ * profile_.face_a[i] * idx2 * isg;
            f.diag[i] = 1.0 + shift_ * alpha_ - f.lower[i] - f.upper[i] + shift_ * profile_.b[i] * isg * mu;
        }
        // Sherman-Morrison split of the periodic corners.
        f.corner_top = f.lower[0];
        f.corner_bottom = f.upper[nx - 1];
        f.gamma = -f.diag[0];
        std::vector<double> d = f.diag;
        d[0] -= f.gamma;
        d[nx - 1] -= f.corner_bottom * f.corner_top / f.gamma;
        f.cprime.resize(nx);
        f.denom.resize(nx);
        f.denom[0] = d[0];
        f.cprime[0] = f.upper[0] / d[0];
        for (int i = 1; i < nx; ++i) {
            f.denom[i] = d[i] - f.lower[i] * f.cprime[i - 1];
            f.cprime[i] = f.upper[i] / f.denom[i];
        }
        f.z.assign(nx, 0.0);
        f.z[0] = f.gamma;
        f.z[nx - 1] = f.corner_bottom;
        // plain tridiagonal solve for z
        f.z[0] /= f.denom[0];
        for (int i = 1; i < nx; ++i) f.z[i] = (f.z[i] - f.lower[i] * f.z[i - 1]) / f.denom[i];
        for (int i = nx - 2; i >= 0; --i) f.z[i] -= f.cprime[i] * f.z[i + 1];
        f.z_factor = 1.0 + f.z[0] + f.corner_top * f.z[nx - 1] / f.gamma;
        return f;
    };

    surface_modes_.clear();
    for (int m = 0; m < nt; ++m) surface_modes_.push_back(build(mode_eigenvalue_[m]));
    radial_mode_ = build(0.0);
}

void ShiftedSolver::solve_mode(const ModeFactor& m, std::vector<double>& r) const {
    const int nx = static_cast<int>(r.size());
    r[0] /= m.denom[0];
    for (int i = 1; i < nx; ++i) r[i] = (r[i] - m.lower[i] * r[i - 1]) / m.denom[i];
    for (int i = nx - 2; i >= 0; --i) r[i] -= m.cprime[i] * r[i + 1];
    const double fact = (r[0] + m.corner_top * r[nx - 1] / m.gamma) / m.z_factor;
    for (int i = 0; i < nx; ++i) r[i] -= fact * m.z[i];
}

SolveStats ShiftedSolver::solve_modal(const Field& rhs, Field& x) const {
    const int nx = rhs.nx();
    std::vector<double> col(nx);
    if (rhs.kind() == FieldKind::radial) {
        for (int i = 0; i < nx; ++i) col[i] = rhs(i, 0);
        solve_mode(radial_mode_, col);
        for (int i = 0; i < nx; ++i) x(i, 0) = col[i];
        return {1, 0.0};
    }
    const int nt = ntheta_;
    std::vector<double> coef(static_cast<std::size_t>(nx) * nt, 0.0);
    for (int i = 0; i < nx; ++i) {
        const auto row = rhs.row(i);
        for (int k = 0; k < nt; ++k) {
            const double* b = &basis_[static_cast<std::size_t>(k) * nt];
            double s = 0.0;
            for (int j = 0; j < nt; ++j) s += b[j] * row[j];
            coef[static_cast<std::size_t>(i) * nt + k] = s;
        }
    }
    for (int k = 0; k < nt; ++k) {
        for (int i = 0; i < nx; ++i) col[i] = coef[static_cast<std::size_t>(i) * nt + k];
        solve_mode(surface_modes_[k], col);
        for (int i = 0; i < nx; ++i) coef[static_cast<std::size_t>(i) * nt + k] = col[i];
    }
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < nt; ++j) x(i, j) = 0.0;
        for (int k = 0; k < nt; ++k) {
            const double c = coef[static_cast<std::size_t>(i) * nt + k];
            const double* b = &basis_[static_cast<std::size_t>(k) * nt];
            for (int j = 0; j < nt; ++j) x(i, j) += c * b[j];
        }
    }
    return {1, 0.0};
}

}  // namespace undulant
