#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "undulant/geometry.hpp"

namespace undulant {

enum class FieldKind { surface, radial };

/// Scalar grid function. Surface fields live on nx x ntheta nodes stored row-major
/// (x rows, theta contiguous); radial fields have a single theta column.
class Field {
public:
    Field() = default;

    static Field surface(const Grid& grid, double value = 0.0);
    static Field radial(const Grid& grid, double value = 0.0);
    static Field like(const Field& other, double value = 0.0);
    static Field radial(int nx, double value = 0.0);

    FieldKind kind() const noexcept { return kind_; }
    int nx() const noexcept { return nx_; }
    int ntheta() const noexcept { return ntheta_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * ntheta_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * ntheta_ + j]; }
    double& operator[](std::size_t k) { return data_[k]; }
    double operator[](std::size_t k) const { return data_[k]; }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }
    std::span<const double> row(int i) const {
        return std::span<const double>(data_).subspan(static_cast<std::size_t>(i) * ntheta_, ntheta_);
    }

    bool same_shape(const Field& other) const noexcept {
        return kind_ == other.kind_ && nx_ == other.nx_ && ntheta_ == other.ntheta_;
    }
    bool all_finite() const noexcept;
    double max_abs() const noexcept;

    Field& operator+=(const Field& rhs);
    Field& operator-=(const Field& rhs);
    Field& operator*=(double s);
    /// this += s * x
    Field& axpy(double s, const Field& x);

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }
    friend bool operator==(const Field&, const Field&) = default;

private:
    Field(FieldKind kind, int nx, int ntheta, double value);

    FieldKind kind_ = FieldKind::radial;
    int nx_ = 0;
    int ntheta_ = 0;
    std::vector<double> data_;
};

void require_same_shape(const Field& a, const Field& b, const char* where);

}  // namespace undulant
