#include "skewlab/cocycles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace skewlab {

double birkhoff_sum(const TrigField& gamma, const ToralAutomorphism& f, const TorusPoint& x, unsigned k) {
  if (k == 0) throw std::invalid_argument("birkhoff_sum: k must be >= 1");
  double s = 0.0;
  TorusPoint y = x;
  for (unsigned i = 0; i < k; ++i) {
    s += gamma(y);
    if (i + 1 < k) y = f.apply(y);
  }
  return s;
}

double birkhoff_sum(const TrigField& gamma, const ToralAutomorphism& f, const RationalPoint& x, unsigned k) {
  if (k == 0) throw std::invalid_argument("birkhoff_sum: k must be >= 1");
  double s = 0.0;
  RationalPoint y = x;
  for (unsigned i = 0; i < k; ++i) {
    s += gamma(y.to_point());
    if (i + 1 < k) y = f.apply(y);
  }
  return s;
}

ObstructionReport livsic_obstruction(const TrigField& gamma, const ToralAutomorphism& f, unsigned max_period,
                                     unsigned block, double tolerance) {
  if (max_period == 0) throw std::invalid_argument("livsic_obstruction: max_period must be >= 1");
  if (block == 0) throw std::invalid_argument("livsic_obstruction: block must be >= 1");
  ObstructionReport rep;
  rep.block = block;
  rep.max_period = max_period;
  rep.tolerance = tolerance;

  for (unsigned m = 1; m <= max_period; ++m) {
    std::set<RationalPoint> seen;
    for (const auto& p : periodic_points_exact(f, m)) {
      if (seen.contains(p)) continue;
      // Minimal period under f; points of smaller period were handled earlier.
      unsigned q = 1;
      for (RationalPoint y = f.apply(p); y != p; y = f.apply(y)) ++q;
      if (q != m) continue;

      // The f-orbit of p splits into gcd(m, block) orbits of f^block.
      const unsigned sub_period = m / std::gcd(m, block);
      std::vector<RationalPoint> orbit;
      RationalPoint y = p;
      for (unsigned i = 0; i < sub_period; ++i) {
        orbit.push_back(y);
        for (unsigned j = 0; j < block; ++j) y = f.apply(y);
      }
      for (const auto& z : orbit) seen.insert(z);
      const RationalPoint rep_pt = *std::min_element(orbit.begin(), orbit.end());

      ObstructionEntry e;
      e.period = sub_period;
      e.base_period = m;
      e.representative_exact = rep_pt;
      e.representative = rep_pt.to_point();
      e.value = wrap_centered(birkhoff_sum(gamma, f, rep_pt, sub_period * block));
      rep.worst = std::max(rep.worst, std::abs(e.value));
      rep.entries.push_back(e);
    }
  }
  // Entries from one period were gathered in point order; sort by representative within a period.
  std::stable_sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) {
    if (a.base_period != b.base_period) return a.base_period < b.base_period;
    return a.representative_exact < b.representative_exact;
  });
  rep.all_zero = rep.worst < tolerance;
  return rep;
}

TrigField coboundary_from_transfer(const TrigField& mu, const ToralAutomorphism& f) {
  return mu.compose_linear(f.matrix()) - mu;
}

const TrigField& CohomologySolution::transfer() const {
  if (!transfer_) throw std::logic_error("CohomologySolution: no finite-support transfer map exists");
  return *transfer_;
}

namespace {

Frequency apply_transpose(const IntMatrix& m, const Frequency& k) {
  Frequency out{};
  for (std::size_t j = 0; j < m.size(); ++j) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s = checked_add(s, checked_mul(m(i, j), k[i]));
    out[j] = s;
  }
  return out;
}

double dot(const Frequency& k, const std::array<double, 2>& v) {
  return static_cast<double>(k[0]) * v[0] + static_cast<double>(k[1]) * v[1];
}

}  // namespace

CohomologySolution solve_cohomological(const TrigField& gamma, const ToralAutomorphism& f, double tolerance) {
  if (gamma.dim() != 2 || f.dim() != 2)
    throw std::invalid_argument("solve_cohomological: only fields on T^2 over 2x2 automorphisms are supported");
  const double tol = tolerance * std::max(1.0, gamma.l1_norm());
  const EigenSplitting eig = eigen_splitting(f);
  const IntMatrix& a = f.matrix();
  const IntMatrix& a_inv = f.inverse_matrix();

  std::vector<OrbitWitness> witnesses;
  const double mean = gamma.mean();
  if (std::abs(wrap_centered(mean)) > tol) {
    OrbitWitness w;
    w.kind = OrbitWitness::Kind::kMean;
    w.orbit.push_back(Frequency{});
    w.sum = mean;
    witnesses.push_back(w);
  }

  // Under k -> A^T k the coordinate k.e_u scales by lambda_u and k.e_s by
  // lambda_s. Since |k| >= |k.e|, once |k.e_u| exceeds the support radius the
  // forward orbit never returns to the support; likewise backward with e_s.
  double radius = 0.0;
  for (const auto& [k, c] : gamma.coefficients())
    radius = std::max(radius, std::hypot(static_cast<double>(k[0]), static_cast<double>(k[1])));

  TrigField mu(2);
  std::set<Frequency> visited;
  for (const auto& [k0, c0] : gamma.coefficients()) {
    // Orbits come in conjugate pairs; walk each pair from its positive-half member.
    if (k0 == Frequency{} || visited.contains(k0) || k0 < negate(k0)) continue;

    std::vector<Frequency> backward;  // k0, A^{-T} k0, ...
    for (Frequency k = k0;; k = apply_transpose(a_inv, k)) {
      backward.push_back(k);
      if (std::abs(dot(k, eig.e_s)) > radius) break;
    }
    std::vector<Frequency> forward;  // A^T k0, (A^T)^2 k0, ...
    for (Frequency k = apply_transpose(a, k0);; k = apply_transpose(a, k)) {
      forward.push_back(k);
      if (std::abs(dot(k, eig.e_u)) > radius) break;
    }
    std::vector<Frequency> orbit(backward.rbegin(), backward.rend());
    orbit.insert(orbit.end(), forward.begin(), forward.end());

    // Trim to one step beyond the first and last support hits.
    std::size_t first = orbit.size(), last = 0;
    for (std::size_t j = 0; j < orbit.size(); ++j)
      if (gamma.coefficients().contains(orbit[j])) {
        first = std::min(first, j);
        last = j;
      }
    const std::size_t lo = first == 0 ? 0 : first - 1;
    const std::size_t hi = std::min(orbit.size() - 1, last + 1);
    std::vector<Frequency> window(orbit.begin() + static_cast<std::ptrdiff_t>(lo),
                                  orbit.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    for (const auto& k : window) {
      visited.insert(k);
      visited.insert(negate(k));
    }

    // gamma_hat(k_j) = mu_hat(k_{j-1}) - mu_hat(k_j)  =>  mu_hat(k_j) = -sum_{i<=j} gamma_hat(k_i).
    std::complex<double> running{};
    std::vector<std::complex<double>> prefix;
    for (const auto& k : window) {
      running += gamma.coefficient(k);
      prefix.push_back(-running);
    }
    if (std::abs(running) > tol) {
      OrbitWitness w;
      w.kind = OrbitWitness::Kind::kOrbitSum;
      w.representative = k0;
      w.orbit = window;
      w.sum = running;
      witnesses.push_back(std::move(w));
      continue;
    }
    // Drop the final prefix: it equals minus the (vanishing) orbit sum.
    for (std::size_t j = 0; j + 1 < window.size(); ++j)
      if (prefix[j] != std::complex<double>{}) mu.add_coefficient(window[j], prefix[j]);
  }

  if (!witnesses.empty()) return CohomologySolution::unsolvable(std::move(witnesses));
  return CohomologySolution::solved(std::move(mu));
}

}  // namespace skewlab
