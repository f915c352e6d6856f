#pragma once

#include <vector>

#include "undulant/field.hpp"
#include "undulant/geometry.hpp"

namespace undulant {

enum class LinearSolverKind { cg, modal };

struct SolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Solves (I - shift * (Delta - alpha)) x = rhs on one profile.
///
/// The cg path runs Jacobi-preconditioned conjugate gradients in the sqrt(g)-weighted inner
/// product, where the operator is symmetric positive definite. The modal path diagonalizes the
/// theta direction with a real orthonormal DFT (the coefficients do not depend on theta) and
/// solves one periodic tridiagonal system in x per azimuthal mode.
class ShiftedSolver {
public:
    ShiftedSolver(const RadiusProfile& profile, double shift, double alpha, LinearSolverKind kind,
                  double tolerance = 1e-10, int max_iterations = 5000);

    /// x carries the initial guess on entry (ignored by the modal path).
    SolveStats solve(const Field& rhs, Field& x) const;

    /// y = (I - shift (Delta - alpha)) x
    void apply(const Field& x, Field& y) const;

    double shift() const noexcept { return shift_; }
    LinearSolverKind kind() const noexcept { return kind_; }

private:
    struct ModeFactor {
        std::vector<double> lower, diag, upper;
        std::vector<double> cprime;
        std::vector<double> denom;
        std::vector<double> z;  // Sherman-Morrison correction vector
        double corner_top = 0.0, corner_bottom = 0.0, gamma = 0.0;
        double z_factor = 0.0;
    };

    SolveStats solve_cg(const Field& rhs, Field& x) const;
    SolveStats solve_modal(const Field& rhs, Field& x) const;
    void factor_modes();
    void solve_mode(const ModeFactor& m, std::vector<double>& r) const;

    RadiusProfile profile_;
    double shift_;
    double alpha_;
    LinearSolverKind kind_;
    double tolerance_;
    int max_iterations_;

    // cg
    std::vector<double> weight_;    // per x node: sqrt(g) dx
    std::vector<double> inv_diag_;  // per x node and kind: Jacobi for surface / radial
    std::vector<double> inv_diag_radial_;

    // modal
    int ntheta_ = 0;
    std::vector<double> basis_;  // ntheta x ntheta, row k = mode k
    std::vector<double> mode_eigenvalue_;
    std::vector<ModeFactor> surface_modes_;
    ModeFactor radial_mode_;
};

}  // namespace undulant
