#pragma once

#include <cstdint>
#include <vector>

#include "undulant/check.hpp"

namespace undulant {

struct OperatorSuiteOptions {
    int profiles = 5;
    int pairs = 20;
    int nx = 64;
    int ntheta = 32;
    double length = 10.0;
    std::uint64_t seed = 1;
    double symmetry_tolerance = 1e-12;
    double eigenvalue_tolerance = 1e-12;
};

/// Invariant suite over random profiles and random field pairs: symmetry and negativity of the
/// surface and radial Laplacians, the azimuthal eigenvalue on a straight cylinder, and the
/// agreement of the two X1 and H^{1,0} evaluation paths. Each check reports the worst case.
std::vector<Check> run_operator_suite(const OperatorSuiteOptions& opts);

}  // namespace undulant
