#pragma once

#include <array>

#include "skewlab/toral_automorphism.hpp"
#include "skewlab/trig_field.hpp"

namespace skewlab {

/// Point (x, y, t) of T^2 x S^1, all coordinates in [0, 1).
using Point3 = std::array<double, 3>;

/// Row-major 3x3 real matrix.
using Matrix3 = std::array<std::array<double, 3>, 3>;

/// The circle extension F(x, t) = (f(x), t + gamma(x) mod 1) over a 2x2
/// hyperbolic toral automorphism f. gamma is a real lift of a null-homotopic
/// circle map; the fiber maps t -> t + gamma(x) have derivative 1.
class SkewProduct {
 public:
  SkewProduct(ToralAutomorphism base, TrigField gamma);

  const ToralAutomorphism& base() const { return base_; }
  const TrigField& gamma() const { return gamma_; }
  /// Partial derivatives of gamma, d_x gamma and d_y gamma.
  const std::array<TrigField, 2>& gamma_gradient() const { return dgamma_; }

  Point3 apply(const Point3& p) const;
  /// DF at p in the (x, y, t) basis: [[A, 0], [d gamma_p, 1]].
  Matrix3 jacobian(const Point3& p) const;

 private:
  ToralAutomorphism base_;
  TrigField gamma_;
  std::array<TrigField, 2> dgamma_;
};

}  // namespace skewlab
