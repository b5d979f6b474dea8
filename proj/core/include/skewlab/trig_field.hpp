#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "skewlab/int_matrix.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

/// Integer frequency vector; entries past the field dimension are zero.
using Frequency = std::array<std::int64_t, kMaxDim>;

Frequency make_frequency(std::initializer_list<std::int64_t> k);

/// A real trigonometric polynomial on T^n,
///
///   f(x) = sum_k c_k exp(2 pi i k.x),   c_{-k} = conj(c_k),
///
/// with finitely many nonzero coefficients. Both c_k and c_{-k} are stored;
/// every operation preserves the conjugate symmetry so evaluation is real.
///
/// Each coefficient carries a running bound on the magnitude of everything
/// that was summed into it. A sum that cancels to within a few ulps of that
/// bound is an exact zero and the coefficient is dropped, so expressions such
/// as d_x d_y H - d_y d_x H vanish identically instead of leaving rounding debris.
class TrigField {
 public:
  using Coefficients = std::map<Frequency, std::complex<double>>;

  explicit TrigField(std::size_t dim = 2);

  static TrigField constant(std::size_t dim, double value);
  /// c cos(2 pi k.x) + s sin(2 pi k.x).
  static TrigField harmonic(std::size_t dim, const Frequency& k, double cos_coef, double sin_coef);

  /// Adds c cos(2 pi k.x) + s sin(2 pi k.x). For k = 0 only c is meaningful.
  TrigField& add_harmonic(const Frequency& k, double cos_coef, double sin_coef);
  /// Adds c to the coefficient at k and conj(c) at -k.
  TrigField& add_coefficient(const Frequency& k, std::complex<double> c);

  std::size_t dim() const { return dim_; }
  const Coefficients& coefficients() const { return coef_; }
  std::complex<double> coefficient(const Frequency& k) const;
  std::size_t size() const { return coef_.size(); }
  bool is_zero() const { return coef_.empty(); }
  /// True when only the k = 0 coefficient may be nonzero.
  bool is_constant() const;
  double mean() const { return coefficient(Frequency{}).real(); }
  /// sum |c_k|, an upper bound for the sup norm.
  double l1_norm() const;
  /// Largest max-norm |k|_inf over the support (0 for the zero field).
  std::int64_t support_radius() const;

  double operator()(std::span<const double> x) const;
  double operator()(const TorusPoint& p) const { return (*this)(p.coords()); }

  /// Partial derivative along coordinate `axis`: c_k -> 2 pi i k_axis c_k.
  TrigField derivative(std::size_t axis) const;
  /// Derivative along a constant real direction v: c_k -> 2 pi i (k.v) c_k.
  TrigField directional_derivative(std::span<const double> v) const;
  /// x -> f(M x) for an integer matrix M acting on the first M.size() coordinates.
  /// Frequencies move k -> M^T k. Throws std::overflow_error if a frequency leaves int64.
  TrigField compose_linear(const IntMatrix& m) const;
  /// Same field viewed on a torus with extra trailing coordinates it does not depend on.
  TrigField extended(std::size_t new_dim) const;
  /// Drops trailing coordinates; throws if the field depends on them.
  TrigField restricted(std::size_t new_dim) const;
  bool depends_on(std::size_t axis) const;

  /// Removes coefficients with |c_k| <= tol and returns the removed l1 mass.
  double prune(double tol);

  TrigField& operator+=(const TrigField& o);
  TrigField& operator-=(const TrigField& o);
  TrigField& operator*=(double s);
  TrigField operator-() const;
  friend TrigField operator+(TrigField a, const TrigField& b) { return a += b; }
  friend TrigField operator-(TrigField a, const TrigField& b) { return a -= b; }
  friend TrigField operator*(TrigField a, double s) { return a *= s; }
  friend TrigField operator*(double s, TrigField a) { return a *= s; }
  /// Pointwise product (convolution of coefficient tables).
  friend TrigField operator*(const TrigField& a, const TrigField& b);

  /// Exact coefficient-table equality.
  friend bool operator==(const TrigField& a, const TrigField& b) {
    return a.dim_ == b.dim_ && a.coef_ == b.coef_;
  }
  /// max_k |a_k - b_k|.
  friend double coefficient_distance(const TrigField& a, const TrigField& b);

 private:
  void accumulate(const Frequency& k, std::complex<double> c, double scale);
  void accumulate(const Frequency& k, std::complex<double> c) { accumulate(k, c, std::abs(c)); }
  double scale_of(const Frequency& k) const;
  /// Rewrites the -k half from the +k half so c_{-k} = conj(c_k) holds bitwise.
  void symmetrize();

  std::size_t dim_;
  Coefficients coef_;
  /// Sum of the magnitudes of the contributions to each stored coefficient.
  std::map<Frequency, double> scale_;
};

Frequency negate(const Frequency& k);

}  // namespace skewlab
