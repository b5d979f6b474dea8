#include "skewlab/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace skewlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Term = std::pair<Frequency, std::complex<double>>;

// k -> M^T k on the first two coordinates; false on int64 overflow.
bool transform(const IntMatrix& m, const Frequency& k, Frequency& out) {
  out = Frequency{};
  for (std::size_t j = 0; j < 2; ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      std::int64_t prod;
      if (__builtin_mul_overflow(m(i, j), k[i], &prod) || __builtin_add_overflow(s, prod, &s)) return false;
    }
    out[j] = s;
  }
  return true;
}

bool positive_half(const Frequency& k) {
  for (auto v : k) {
    if (v != 0) return v > 0;
  }
  return false;
}

TrigField field_from_terms(const std::vector<Term>& terms, double weight) {
  TrigField f(2);
  for (const auto& [k, c] : terms)
    if (k == Frequency{} || positive_half(k)) f.add_coefficient(k, weight * c);
  return f;
}

}  // namespace

const char* to_string(Direction d) { return d == Direction::kStable ? "stable" : "unstable"; }

FiberCorrection fiber_correction(const SkewProduct& F, Direction dir, unsigned order,
                                 const FiberCorrectionOptions& options) {
  if (order == 0) throw std::invalid_argument("fiber_correction: order must be >= 1");
  const EigenSplitting eig = eigen_splitting(F.base());
  const bool unstable = dir == Direction::kUnstable;

  FiberCorrection out;
  out.direction = dir;
  out.order = order;
  out.eigenvector = unstable ? eig.e_u : eig.e_s;
  out.eigenvalue = unstable ? eig.lambda_u : eig.lambda_s;

  // G = d gamma(e); the series sums weighted copies of G o f^{-j} (unstable) or G o f^{j} (stable).
  const TrigField g = F.gamma().directional_derivative(out.eigenvector);
  const double g_norm = g.l1_norm();
  const double lam_u = std::abs(eig.lambda_u);
  const double negligible = options.negligible * std::max(g_norm, std::numeric_limits<double>::min());

  const IntMatrix& step = unstable ? F.base().inverse_matrix() : F.base().matrix();
  const double ratio = unstable ? 1.0 / eig.lambda_u : eig.lambda_s;

  std::vector<Term> current(g.coefficients().begin(), g.coefficients().end());
  double weight = unstable ? 1.0 : -1.0;
  TrigField sum(2);
  double dropped = 0.0;
  for (unsigned idx = 0; idx < order; ++idx) {
    // Unstable terms start at j = 1, stable terms at j = 0.
    if (unstable || idx > 0) {
      weight *= ratio;
      std::vector<Term> next;
      next.reserve(current.size());
      for (const auto& [k, c] : current) {
        Frequency kk;
        if (transform(step, k, kk)) {
          next.emplace_back(kk, c);
          continue;
        }
        // Frequency left int64: the rest of this coefficient's chain is a geometric tail.
        const double tail = std::abs(c * weight) / (1.0 - std::abs(ratio));
        if (tail > negligible)
          throw std::overflow_error("fiber_correction: order " + std::to_string(order) +
                                    " overflows the int64 frequency range before the series is negligible");
        dropped += tail;
      }
      current = std::move(next);
    }
    sum += field_from_terms(current, weight);
    if (sum.size() > options.max_coefficients)
      throw std::length_error("fiber_correction: coefficient cap of " + std::to_string(options.max_coefficients) +
                              " exceeded at term " + std::to_string(idx));
  }

  out.pruned_mass = dropped + sum.prune(negligible);
  out.correction = std::move(sum);
  const double c = g_norm * lam_u / (lam_u - 1.0);
  out.truncation_bound = c * std::pow(lam_u, -static_cast<double>(order));
  out.rounding_allowance = 8.0 * kEps * static_cast<double>(order + out.correction.size()) * c;
  return out;
}

double recurrence_residual(const SkewProduct& F, const FiberCorrection& c, std::size_t grid) {
  const TrigField g = F.gamma().directional_derivative(c.eigenvector);
  double r = 0.0;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j) {
      const TorusPoint x{static_cast<double>(i) / static_cast<double>(grid),
                         static_cast<double>(j) / static_cast<double>(grid)};
      const double v = c.eigenvalue * c.correction(F.base().apply(x)) - g(x) - c.correction(x);
      r = std::max(r, std::abs(v));
    }
  return r;
}

OneForm joint_bundle_form(const FiberCorrection& stable, const FiberCorrection& unstable) {
  if (stable.direction != Direction::kStable || unstable.direction != Direction::kUnstable)
    throw std::invalid_argument("joint_bundle_form: expected one stable and one unstable correction");
  const auto& es = stable.eigenvector;
  const auto& eu = unstable.eigenvector;
  const double det = es[0] * eu[1] - eu[0] * es[1];
  if (std::abs(det) < 1e-12) throw std::invalid_argument("joint_bundle_form: eigenvectors are collinear");
  // (a, b) [e_s e_u] = (c_s, c_u)
  const TrigField a = stable.correction * (eu[1] / det) + unstable.correction * (-es[1] / det);
  const TrigField b = stable.correction * (-eu[0] / det) + unstable.correction * (es[0] / det);
  return OneForm(-a, -b, TrigField::constant(2, 1.0));
}

double leaf_invariance_check(const SkewProduct& F, const GraphLeaf& leaf, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const TorusPoint x{u(rng), u(rng)};
    const Point3 p{x[0], x[1], wrap_unit(leaf.theta + leaf.mu(x))};
    const Point3 q = F.apply(p);
    const double target = leaf.theta + leaf.mu(std::array<double, 2>{q[0], q[1]});
    worst = std::max(worst, circle_distance(q[2], target));
  }
  return worst;
}

double graph_tangency_check(const OneForm& alpha, const TrigField& mu, std::size_t grid) {
  const TrigField mx = mu.derivative(0);
  const TrigField my = mu.derivative(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid; ++i)
    for (std::size_t j = 0; j < grid; ++j) {
      const std::array<double, 2> xy{static_cast<double>(i) / static_cast<double>(grid),
                                     static_cast<double>(j) / static_cast<double>(grid)};
      const Point3 p{xy[0], xy[1], wrap_unit(mu(xy))};
      const Covector a = alpha.at(p);
      if (std::abs(a[2]) < 1e-8)
        throw TransversalityError("graph_tangency_check: v_t vanishes at (" + std::to_string(xy[0]) + ", " +
                                  std::to_string(xy[1]) + ")");
      worst = std::max({worst, std::abs(a[0] + a[2] * mx(xy)), std::abs(a[1] + a[2] * my(xy))});
    }
  return worst;
}

double cone_slope(const SkewProduct& F, Direction dir, const std::array<double, 2>& p, unsigned steps) {
  const EigenSplitting eig = eigen_splitting(F.base());
  const bool unstable = dir == Direction::kUnstable;
  const IntMatrix& a = F.base().matrix();
  const IntMatrix& a_inv = F.base().inverse_matrix();
  const auto& dg = F.gamma_gradient();

  // Orbit point M^j p (mod 1) from an exact integer power, in extended precision.
  auto orbit_point = [&](const IntMatrix& m, unsigned j) {
    const IntMatrix mj = m.power(j);
    std::array<double, 2> out{};
    for (std::size_t r = 0; r < 2; ++r) {
      const long double s = static_cast<long double>(mj(r, 0)) * p[0] + static_cast<long double>(mj(r, 1)) * p[1];
      out[r] = wrap_unit(static_cast<double>(s - std::floor(s)));
    }
    return out;
  };

  // Generic start vector, deliberately not an eigendirection.
  std::array<double, 3> v{0.8, 0.6, 0.0};
  auto normalize = [&v] {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto& c : v) c /= n;
  };
  if (unstable) {
    // v <- DF(f^{-j} p) v for j = steps, ..., 1
    for (unsigned j = steps; j >= 1; --j) {
      const auto x = orbit_point(a_inv, j);
      const double vx = static_cast<double>(a(0, 0)) * v[0] + static_cast<double>(a(0, 1)) * v[1];
      const double vy = static_cast<double>(a(1, 0)) * v[0] + static_cast<double>(a(1, 1)) * v[1];
      v = {vx, vy, dg[0](x) * v[0] + dg[1](x) * v[1] + v[2]};
      normalize();
    }
  } else {
    // v <- DF(f^{j} p)^{-1} v for j = steps - 1, ..., 0;  DF^{-1}(w, s) = (A^{-1} w, s - d gamma(A^{-1} w))
    for (unsigned jj = steps; jj >= 1; --jj) {
      const auto x = orbit_point(a, jj - 1);
      const double wx = static_cast<double>(a_inv(0, 0)) * v[0] + static_cast<double>(a_inv(0, 1)) * v[1];
      const double wy = static_cast<double>(a_inv(1, 0)) * v[0] + static_cast<double>(a_inv(1, 1)) * v[1];
      v = {wx, wy, v[2] - (dg[0](x) * wx + dg[1](x) * wy)};
      normalize();
    }
  }
  // Component of the base part along the target eigenvector in the (e_s, e_u) basis.
  const auto& es = eig.e_s;
  const auto& eu = eig.e_u;
  const double det = es[0] * eu[1] - eu[0] * es[1];
  const double along = unstable ? (es[0] * v[1] - es[1] * v[0]) / det : (eu[1] * v[0] - eu[0] * v[1]) / det;
  return v[2] / along;
}

}  // namespace skewlab
