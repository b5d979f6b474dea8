#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "skewlab/torus.hpp"

namespace skewlab {

/// Wide accumulator for exact products of int64 entries.
__extension__ typedef __int128 Int128;

/// Square integer matrix with overflow-checked arithmetic. Row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  IntMatrix transpose() const;
  IntMatrix power(unsigned m) const;
  /// Exact determinant (fraction-free Bareiss elimination).
  std::int64_t determinant() const;
  /// Inverse of a unimodular matrix; throws if |det| != 1.
  IntMatrix unimodular_inverse() const;

  std::string to_string() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

/// Checked helpers; throw std::overflow_error on int64 overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Diagonal reduction U * M * V = D with U, V unimodular and D diagonal.
/// The divisibility chain of the full Smith form is not enforced; only
/// the diagonal shape is needed to enumerate M^{-1} Z^n / Z^n.
struct DiagonalReduction {
  IntMatrix u;
  IntMatrix v;
  std::vector<std::int64_t> diagonal;
};

DiagonalReduction diagonalize(const IntMatrix& m);

}  // namespace skewlab
