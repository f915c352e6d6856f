#include "undulant/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "undulant/errors.hpp"

namespace undulant {

Field::Field(FieldKind kind, int nx, int ntheta, double value)
    : kind_(kind), nx_(nx), ntheta_(ntheta), data_(static_cast<std::size_t>(nx) * ntheta, value) {}

Field Field::surface(const Grid& grid, double value) {
    return Field(FieldKind::surface, grid.nx(), grid.ntheta(), value);
}

Field Field::radial(const Grid& grid, double value) { return Field(FieldKind::radial, grid.nx(), 1, value); }

Field Field::radial(int nx, double value) { return Field(FieldKind::radial, nx, 1, value); }

Field Field::like(const Field& other, double value) {
    return Field(other.kind_, other.nx_, other.ntheta_, value);
}

bool Field::all_finite() const noexcept {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double Field::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Field& Field::operator+=(const Field& rhs) {
    require_same_shape(*this, rhs, "Field::operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Field& Field::operator-=(const Field& rhs) {
    require_same_shape(*this, rhs, "Field::operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Field& Field::axpy(double s, const Field& x) {
    require_same_shape(*this, x, "Field::axpy");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * x.data_[k];
    return *this;
}

void require_same_shape(const Field& a, const Field& b, const char* where) {
    if (!a.same_shape(b)) throw Error(ErrorCode::ShapeMismatch, std::string(where) + ": field shapes differ");
}

}  // namespace undulant
