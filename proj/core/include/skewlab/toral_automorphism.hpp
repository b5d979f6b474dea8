#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "skewlab/int_matrix.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

/// A hyperbolic automorphism x -> A x (mod 1) of T^n.
///
/// Construction enforces |det A| = 1 and that no eigenvalue has modulus one.
/// Matrices with det A = -1 are accepted; reverses_orientation() reports them.
class ToralAutomorphism {
 public:
  explicit ToralAutomorphism(IntMatrix matrix);

  /// Arnold's cat map [[2, 1], [1, 1]].
  static ToralAutomorphism cat_map();

  const IntMatrix& matrix() const { return a_; }
  const IntMatrix& inverse_matrix() const { return inv_; }
  std::size_t dim() const { return a_.size(); }
  std::int64_t determinant() const { return det_; }
  bool reverses_orientation() const { return det_ < 0; }
  const std::vector<std::complex<double>>& eigenvalues() const { return eigenvalues_; }

  TorusPoint apply(const TorusPoint& x) const;
  TorusPoint apply_inverse(const TorusPoint& x) const;
  /// Exact image of a rational point; the denominator is preserved.
  RationalPoint apply(const RationalPoint& x) const;

  ToralAutomorphism power(unsigned m) const;

 private:
  ToralAutomorphism(IntMatrix matrix, IntMatrix inverse, std::int64_t det, std::vector<std::complex<double>> ev);

  IntMatrix a_;
  IntMatrix inv_;
  std::int64_t det_ = 1;
  std::vector<std::complex<double>> eigenvalues_;
};

/// Real eigen-data of a hyperbolic 2x2 automorphism. Eigenvectors are unit
/// length; e_u has positive first coordinate, e_s has positive second coordinate.
struct EigenSplitting {
  double lambda_s = 0.0;
  std::array<double, 2> e_s{};
  double lambda_u = 0.0;
  std::array<double, 2> e_u{};
};

/// Stable/unstable eigenpairs of a 2x2 hyperbolic automorphism.
/// Throws std::invalid_argument for other dimensions.
EigenSplitting eigen_splitting(const ToralAutomorphism& f);

/// All fixed points of f^m as exact rationals, sorted; there are |det(A^m - I)| of them.
std::vector<RationalPoint> periodic_points_exact(const ToralAutomorphism& f, unsigned m);
/// Same set as floating-point torus points.
std::vector<TorusPoint> periodic_points(const ToralAutomorphism& f, unsigned m);

}  // namespace skewlab
