#include "skewlab/toral_automorphism.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace skewlab {

namespace {

constexpr double kUnitCircleTol = 1e-12;

std::vector<std::complex<double>> compute_eigenvalues(const IntMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = static_cast<double>(a(r, c));
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  std::vector<std::complex<double>> ev;
  for (Eigen::Index i = 0; i < n; ++i) ev.push_back(solver.eigenvalues()[i]);
  return ev;
}

std::array<double, 2> unit(double x, double y) {
  const double n = std::hypot(x, y);
  return {x / n, y / n};
}

// Eigenvector of [[a, b], [c, d]] for eigenvalue lambda; picks the better
// conditioned of the two row equations.
std::array<double, 2> eigenvector(const IntMatrix& m, double lambda) {
  const double a = static_cast<double>(m(0, 0)), b = static_cast<double>(m(0, 1));
  const double c = static_cast<double>(m(1, 0)), d = static_cast<double>(m(1, 1));
  // (a - l) x + b y = 0  ->  (b, l - a);   c x + (d - l) y = 0  ->  (l - d, c)
  const std::array<double, 2> v1{b, lambda - a};
  const std::array<double, 2> v2{lambda - d, c};
  const auto& v = std::hypot(v1[0], v1[1]) >= std::hypot(v2[0], v2[1]) ? v1 : v2;
  return unit(v[0], v[1]);
}

}  // namespace

ToralAutomorphism::ToralAutomorphism(IntMatrix matrix) : a_(std::move(matrix)) {
  det_ = a_.determinant();
  if (det_ != 1 && det_ != -1) {
    std::ostringstream os;
    os << "ToralAutomorphism: |det| must be 1, got det = " << det_ << " for " << a_.to_string();
    throw std::invalid_argument(os.str());
  }
  inv_ = a_.unimodular_inverse();
  eigenvalues_ = compute_eigenvalues(a_);
  for (const auto& ev : eigenvalues_) {
    if (std::abs(std::abs(ev) - 1.0) < kUnitCircleTol) {
      std::ostringstream os;
      os << "ToralAutomorphism: not hyperbolic, eigenvalue " << ev.real();
      if (ev.imag() != 0.0) os << (ev.imag() > 0 ? "+" : "") << ev.imag() << "i";
      os << " has modulus 1 for " << a_.to_string();
      throw std::invalid_argument(os.str());
    }
  }
}

ToralAutomorphism::ToralAutomorphism(IntMatrix matrix, IntMatrix inverse, std::int64_t det,
                                     std::vector<std::complex<double>> ev)
    : a_(std::move(matrix)), inv_(std::move(inverse)), det_(det), eigenvalues_(std::move(ev)) {}

ToralAutomorphism ToralAutomorphism::cat_map() { return ToralAutomorphism(IntMatrix{{2, 1}, {1, 1}}); }

TorusPoint ToralAutomorphism::apply(const TorusPoint& x) const {
  if (x.dim() != dim()) throw std::invalid_argument("ToralAutomorphism::apply: dimension mismatch");
  std::array<double, kMaxDim> y{};
  for (std::size_t r = 0; r < dim(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < dim(); ++c) s += static_cast<double>(a_(r, c)) * x[c];
    y[r] = s;
  }
  return TorusPoint(std::span<const double>(y.data(), dim()));
}

TorusPoint ToralAutomorphism::apply_inverse(const TorusPoint& x) const {
  if (x.dim() != dim()) throw std::invalid_argument("ToralAutomorphism::apply_inverse: dimension mismatch");
  std::array<double, kMaxDim> y{};
  for (std::size_t r = 0; r < dim(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < dim(); ++c) s += static_cast<double>(inv_(r, c)) * x[c];
    y[r] = s;
  }
  return TorusPoint(std::span<const double>(y.data(), dim()));
}

RationalPoint ToralAutomorphism::apply(const RationalPoint& x) const {
  if (x.dim != dim()) throw std::invalid_argument("ToralAutomorphism::apply: dimension mismatch");
  RationalPoint y;
  y.den = x.den;
  y.dim = x.dim;
  for (std::size_t r = 0; r < dim(); ++r) {
    Int128 s = 0;
    for (std::size_t c = 0; c < dim(); ++c) s += static_cast<Int128>(a_(r, c)) * x.num[c];
    s %= x.den;
    if (s < 0) s += x.den;
    y.num[r] = static_cast<std::int64_t>(s);
  }
  return y;
}

ToralAutomorphism ToralAutomorphism::power(unsigned m) const {
  std::vector<std::complex<double>> ev;
  for (const auto& e : eigenvalues_) ev.push_back(std::pow(e, static_cast<double>(m)));
  const std::int64_t det = (m % 2 == 1) ? det_ : 1;
  return ToralAutomorphism(a_.power(m), inv_.power(m), det, std::move(ev));
}

EigenSplitting eigen_splitting(const ToralAutomorphism& f) {
  if (f.dim() != 2) throw std::invalid_argument("eigen_splitting: only 2x2 automorphisms are supported");
  const IntMatrix& m = f.matrix();
  const double tr = static_cast<double>(m(0, 0) + m(1, 1));
  const double det = static_cast<double>(f.determinant());
  const double disc = tr * tr - 4.0 * det;
  if (disc <= 0.0) throw std::invalid_argument("eigen_splitting: complex eigenvalues, matrix is not hyperbolic");
  // Stable root via the product formula avoids cancellation.
  const double sq = std::sqrt(disc);
  const double big = tr >= 0 ? 0.5 * (tr + sq) : 0.5 * (tr - sq);
  const double small = det / big;
  if (std::abs(small) >= 1.0 || std::abs(big) <= 1.0) {
    std::ostringstream os;
    os << "eigen_splitting: not hyperbolic, eigenvalue " << (std::abs(small) >= 1.0 ? small : big) << " has modulus 1";
    throw std::invalid_argument(os.str());
  }
  EigenSplitting s;
  s.lambda_u = big;
  s.lambda_s = small;
  s.e_u = eigenvector(m, big);
  s.e_s = eigenvector(m, small);
  if (s.e_u[0] < 0) s.e_u = {-s.e_u[0], -s.e_u[1]};
  if (s.e_s[1] < 0) s.e_s = {-s.e_s[0], -s.e_s[1]};
  return s;
}

std::vector<RationalPoint> periodic_points_exact(const ToralAutomorphism& f, unsigned m) {
  if (m == 0) throw std::invalid_argument("periodic_points: period must be >= 1");
  const std::size_t n = f.dim();
  const IntMatrix shifted = f.matrix().power(m) - IntMatrix::identity(n);
  const DiagonalReduction red = diagonalize(shifted);
  std::vector<std::int64_t> d;
  for (auto v : red.diagonal) {
    if (v == 0) throw std::invalid_argument("periodic_points: A^m - I is singular");
    d.push_back(v < 0 ? -v : v);
  }
  std::int64_t den = 1;
  for (auto v : d) den = std::lcm(den, v);

  // x = V y, y_i = w_i / d_i with 0 <= w_i < d_i.
  std::vector<RationalPoint> pts;
  std::vector<std::int64_t> w(n, 0);
  while (true) {
    RationalPoint p;
    p.den = den;
    p.dim = n;
    for (std::size_t r = 0; r < n; ++r) {
      Int128 s = 0;
      for (std::size_t c = 0; c < n; ++c) s += static_cast<Int128>(red.v(r, c)) * (w[c] * (den / d[c]));
      s %= den;
      if (s < 0) s += den;
      p.num[r] = static_cast<std::int64_t>(s);
    }
    pts.push_back(p);
    std::size_t i = 0;
    while (i < n && ++w[i] == d[i]) w[i++] = 0;
    if (i == n) break;
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<TorusPoint> periodic_points(const ToralAutomorphism& f, unsigned m) {
  std::vector<TorusPoint> out;
  for (const auto& p : periodic_points_exact(f, m)) out.push_back(p.to_point());
  return out;
}

}  // namespace skewlab
