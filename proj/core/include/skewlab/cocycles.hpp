#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "skewlab/toral_automorphism.hpp"
#include "skewlab/trig_field.hpp"

namespace skewlab {

/// gamma(x) + gamma(f x) + ... + gamma(f^{k-1} x), real lift (not reduced mod 1).
double birkhoff_sum(const TrigField& gamma, const ToralAutomorphism& f, const TorusPoint& x, unsigned k);
/// Same sum along the exact orbit of a rational point.
double birkhoff_sum(const TrigField& gamma, const ToralAutomorphism& f, const RationalPoint& x, unsigned k);

/// One periodic orbit of f^k and the Birkhoff sum of gamma_k around it.
struct ObstructionEntry {
  unsigned period = 0;       ///< minimal period under f^k
  unsigned base_period = 0;  ///< minimal period under f
  RationalPoint representative_exact;
  TorusPoint representative;
  double value = 0.0;  ///< sum over the f^k-orbit of gamma_k, reduced to (-1/2, 1/2]
};

struct ObstructionReport {
  unsigned block = 1;
  unsigned max_period = 1;
  double tolerance = 1e-10;
  std::vector<ObstructionEntry> entries;
  bool all_zero = true;
  double worst = 0.0;  ///< largest |value|
};

/// Periodic-orbit obstruction certificate for gamma being a coboundary over f^k.
/// The sample set is every periodic point of f of minimal period m <= max_period,
/// grouped one entry per f^k-orbit.
ObstructionReport livsic_obstruction(const TrigField& gamma, const ToralAutomorphism& f, unsigned max_period,
                                     unsigned block = 1, double tolerance = 1e-10);

/// mu o f - mu, exactly at the coefficient level.
TrigField coboundary_from_transfer(const TrigField& mu, const ToralAutomorphism& f);

/// Why gamma has no finite-support transfer map.
struct OrbitWitness {
  enum class Kind { kMean, kOrbitSum };
  Kind kind = Kind::kOrbitSum;
  /// First frequency of the orbit that meets the support of gamma (zero for kMean).
  Frequency representative{};
  /// The walked orbit window (A^T)^j k0, including one step past the support on each side.
  std::vector<Frequency> orbit;
  /// Sum of gamma's coefficients along the orbit, or the mean of gamma for kMean.
  std::complex<double> sum;
};

/// Result of solving mu o f - mu = gamma (mod constants in Z) in the trig class.
class CohomologySolution {
 public:
  static CohomologySolution solved(TrigField transfer) { return CohomologySolution(std::move(transfer), {}); }
  static CohomologySolution unsolvable(std::vector<OrbitWitness> w) {
    return CohomologySolution(std::nullopt, std::move(w));
  }

  bool has_transfer() const { return transfer_.has_value(); }
  /// Transfer map with mean zero. Throws std::logic_error when unsolvable.
  const TrigField& transfer() const;
  const std::vector<OrbitWitness>& witnesses() const { return witnesses_; }

 private:
  CohomologySolution(std::optional<TrigField> t, std::vector<OrbitWitness> w)
      : transfer_(std::move(t)), witnesses_(std::move(w)) {}

  std::optional<TrigField> transfer_;
  std::vector<OrbitWitness> witnesses_;
};

/// Solves mu o f - mu = gamma over a 2x2 hyperbolic automorphism by telescoping
/// gamma's Fourier coefficients along each A^T-orbit of frequencies. An orbit
/// whose coefficient sum does not vanish, or a non-integer mean, has no
/// finite-support solution; all such witnesses are returned.
/// `tolerance` is relative to max(1, ||gamma||_1).
CohomologySolution solve_cohomological(const TrigField& gamma, const ToralAutomorphism& f, double tolerance = 1e-12);

}  // namespace skewlab
