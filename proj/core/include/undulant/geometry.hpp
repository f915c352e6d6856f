#pragma once

#include <numbers>
#include <vector>

namespace undulant {

/// Periodic tensor grid on [0, L) x [0, 2pi). Nodes sit at x_i = i*dx, theta_j = j*dtheta.
class Grid {
public:
    Grid(int nx, int ntheta, double length);

    int nx() const noexcept { return nx_; }
    int ntheta() const noexcept { return ntheta_; }
    double length() const noexcept { return length_; }
    double dx() const noexcept { return length_ / nx_; }
    double dtheta() const noexcept { return 2.0 * std::numbers::pi / ntheta_; }
    double x(int i) const noexcept { return i * dx(); }
    double theta(int j) const noexcept { return j * dtheta(); }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int nx_;
    int ntheta_;
    double length_;
};

enum class ProfileKind { constant, sinusoidal, gaussian_bump, tabulated };

struct ProfileSpec {
    ProfileKind kind = ProfileKind::constant;
    double base_radius = 1.0;
    // sinusoidal: rho = R (1 + amplitude sin(k x))
    double undulation_amplitude = 0.0;
    double undulation_wavenumber = 0.0;
    // gaussian_bump: rho = R + height * sum_m exp(-((x - center - mL)/width)^2), m in {-1,0,1}
    double bump_center = 0.0;
    double bump_width = 1.0;
    double bump_height = 0.0;
    // tabulated: one radius sample per x node
    std::vector<double> samples;
};

/// Node and face metric data of the surface of revolution on a grid.
///
/// face_a[i] is the x-flux coefficient rho^2/sqrt(g) at the face between node i and i+1 (periodic);
/// b[i] is the theta-flux coefficient (1+rho_x^2)/sqrt(g) at node i.
struct RadiusProfile {
    Grid grid;
    std::vector<double> rho;
    std::vector<double> rho_x;
    std::vector<double> g;
    std::vector<double> sqrt_g;
    std::vector<double> face_a;
    std::vector<double> b;

    double max_radius() const;
    double min_radius() const;
    /// 1 + max |rho_x|^2, the constant controlling the azimuthal coercivity bound.
    double slope_constant() const;
    /// Surface area sum_i sqrt_g_i dx dtheta over all nodes.
    double area() const;
};

RadiusProfile build_profile(const ProfileSpec& spec, const Grid& grid);

/// Checks the x-periodicity of a sinusoidal profile: k L / (2 pi) must be an integer.
bool sinusoid_is_periodic(double wavenumber, double length, double rel_tol = 1e-6);

}  // namespace undulant
