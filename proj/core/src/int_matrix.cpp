#include "skewlab/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace skewlab {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

IntMatrix::IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {
  if (n == 0 || n > kMaxDim) throw std::invalid_argument("IntMatrix: size must be in [1, kMaxDim]");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : IntMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != n_) throw std::invalid_argument("IntMatrix: matrix must be square");
    std::size_t c = 0;
    for (auto v : row) (*this)(r, c++) = v;
    ++r;
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("IntMatrix: size mismatch");
  IntMatrix p(a.n_);
  for (std::size_t r = 0; r < a.n_; ++r)
    for (std::size_t c = 0; c < a.n_; ++c) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < a.n_; ++k) s = checked_add(s, checked_mul(a(r, k), b(k, c)));
      p(r, c) = s;
    }
  return p;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("IntMatrix: size mismatch");
  IntMatrix d(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) d.a_[i] = checked_add(a.a_[i], -b.a_[i]);
  return d;
}

IntMatrix IntMatrix::power(unsigned m) const {
  IntMatrix result = identity(n_);
  IntMatrix base = *this;
  while (m > 0) {
    if (m & 1u) result = result * base;
    m >>= 1u;
    if (m > 0) base = base * base;
  }
  return result;
}

std::int64_t IntMatrix::determinant() const {
  // Bareiss: every intermediate is a minor, so 128 bits are ample for kMaxDim.
  std::vector<Int128> m(a_.begin(), a_.end());
  auto at = [&](std::size_t r, std::size_t c) -> Int128& { return m[r * n_ + c]; };
  Int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n_ && at(swap, k) == 0) ++swap;
      if (swap == n_) return 0;
      for (std::size_t c = 0; c < n_; ++c) std::swap(at(k, c), at(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i)
      for (std::size_t j = k + 1; j < n_; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  Int128 det = sign * at(n_ - 1, n_ - 1);
  if (det > INT64_MAX || det < INT64_MIN) throw std::overflow_error("determinant exceeds int64");
  return static_cast<std::int64_t>(det);
}

IntMatrix IntMatrix::unimodular_inverse() const {
  auto red = diagonalize(*this);
  // U M V = D with D = diag(+-1)  =>  M^{-1} = V D U  (D is its own inverse).
  for (auto d : red.diagonal)
    if (std::llabs(d) != 1) throw std::invalid_argument("IntMatrix: matrix is not unimodular");
  IntMatrix dm(n_);
  for (std::size_t i = 0; i < n_; ++i) dm(i, i) = red.diagonal[i];
  return red.v * dm * red.u;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < n_; ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < n_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

DiagonalReduction diagonalize(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(n);

  auto row_combine = [&](IntMatrix& x, std::size_t target, std::size_t src, std::int64_t q) {
    for (std::size_t c = 0; c < n; ++c) x(target, c) = checked_add(x(target, c), -checked_mul(q, x(src, c)));
  };
  auto col_combine = [&](IntMatrix& x, std::size_t target, std::size_t src, std::int64_t q) {
    for (std::size_t r = 0; r < n; ++r) x(r, target) = checked_add(x(r, target), -checked_mul(q, x(r, src)));
  };
  auto swap_rows = [&](IntMatrix& x, std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < n; ++c) std::swap(x(a, c), x(b, c));
  };
  auto swap_cols = [&](IntMatrix& x, std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < n; ++r) std::swap(x(r, a), x(r, b));
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot: smallest nonzero magnitude in the trailing block.
      std::size_t pr = n, pc = n;
      for (std::size_t r = t; r < n; ++r)
        for (std::size_t c = t; c < n; ++c)
          if (d(r, c) != 0 && (pr == n || std::llabs(d(r, c)) < std::llabs(d(pr, pc)))) {
            pr = r;
            pc = c;
          }
      if (pr == n) break;  // trailing block is zero
      if (pr != t) {
        swap_rows(d, t, pr);
        swap_rows(u, t, pr);
      }
      if (pc != t) {
        swap_cols(d, t, pc);
        swap_cols(v, t, pc);
      }
      bool clean = true;
      for (std::size_t r = t + 1; r < n; ++r) {
        std::int64_t q = d(r, t) / d(t, t);
        if (q != 0) {
          row_combine(d, r, t, q);
          row_combine(u, r, t, q);
        }
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        std::int64_t q = d(t, c) / d(t, t);
        if (q != 0) {
          col_combine(d, c, t, q);
          col_combine(v, c, t, q);
        }
        if (d(t, c) != 0) clean = false;
      }
      if (clean) break;
    }
  }
  DiagonalReduction out{u, v, {}};
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(d(i, i));
  return out;
}

}  // namespace skewlab
