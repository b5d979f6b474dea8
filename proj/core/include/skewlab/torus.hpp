#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace skewlab {

/// Largest torus dimension supported by points, frequencies and integer matrices.
/// T^4 x S^1 is the biggest space the data structures are sized for.
inline constexpr std::size_t kMaxDim = 5;

/// Reduce a real number to the fundamental domain [0, 1).
inline double wrap_unit(double v) {
  double r = v - std::floor(v);
  // floor() of values like -1e-18 gives r == 1.0 after rounding.
  return r >= 1.0 ? 0.0 : r;
}

/// Reduce a real number to the centered fundamental domain (-1/2, 1/2].
inline double wrap_centered(double v) {
  double r = v - std::floor(v + 0.5);
  if (r <= -0.5) r += 1.0;
  return r;
}

/// Distance between two points of R/Z: min(|a-b|, 1-|a-b|) after reduction.
inline double circle_distance(double a, double b) { return std::abs(wrap_centered(a - b)); }

/// A point of the torus R^n / Z^n with every coordinate kept in [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(std::span<const double> coords) : dim_(coords.size()) {
    if (dim_ > kMaxDim) throw std::invalid_argument("TorusPoint: dimension exceeds kMaxDim");
    for (std::size_t i = 0; i < dim_; ++i) c_[i] = wrap_unit(coords[i]);
  }
  TorusPoint(std::initializer_list<double> coords)
      : TorusPoint(std::span<const double>(coords.begin(), coords.size())) {}

  std::size_t dim() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> coords() const { return {c_.data(), dim_}; }

  /// Max over coordinates of the circle distance.
  double distance(const TorusPoint& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) d = std::max(d, circle_distance(c_[i], other.c_[i]));
    return d;
  }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

/// A torus point with rational coordinates num[i] / den, 0 <= num[i] < den.
/// Periodic points of toral automorphisms are of this form and their orbits
/// can be followed exactly.
struct RationalPoint {
  std::array<std::int64_t, kMaxDim> num{};
  std::int64_t den = 1;
  std::size_t dim = 0;

  TorusPoint to_point() const {
    std::array<double, kMaxDim> x{};
    for (std::size_t i = 0; i < dim; ++i) x[i] = static_cast<double>(num[i]) / static_cast<double>(den);
    return TorusPoint(std::span<const double>(x.data(), dim));
  }

  friend auto operator<=>(const RationalPoint&, const RationalPoint&) = default;
};

}  // namespace skewlab
