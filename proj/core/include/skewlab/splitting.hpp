#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "skewlab/forms.hpp"
#include "skewlab/skew_product.hpp"
#include "skewlab/trig_field.hpp"

namespace skewlab {

enum class Direction { kStable, kUnstable };

const char* to_string(Direction d);

struct FiberCorrectionOptions {
  /// Hard cap on the number of stored coefficients.
  std::size_t max_coefficients = 1'000'000;
  /// Coefficients at or below this magnitude (relative to ||d gamma(e)||_1) are
  /// pruned after summation. Their mass is added to the reported error bound.
  double negligible = 1e-17;
};

/// Slope field of the invariant bundle E^delta of a skew-product:
/// E^delta(x, t) = span{(e_delta, c(x))}.
///
/// The slope solves c(f x) lambda = d gamma_x(e) + c(x) and is built as the
/// truncated series
///   unstable: c(x) =  sum_{j=1..N}   lambda_u^{-j} d gamma_{f^{-j} x}(e_u)
///   stable:   c(x) = -sum_{j=0..N-1} lambda_s^{ j} d gamma_{f^{ j} x}(e_s)
/// whose terms are trig polynomials composed with integer matrices.
struct FiberCorrection {
  Direction direction = Direction::kUnstable;
  unsigned order = 0;
  std::array<double, 2> eigenvector{};
  double eigenvalue = 0.0;
  TrigField correction{2};
  /// C |lambda_u|^{-N} with C = ||d gamma(e)||_1 |lambda_u| / (|lambda_u| - 1).
  double truncation_bound = 0.0;
  /// l1 mass of coefficients pruned or whose frequency left the int64 range.
  double pruned_mass = 0.0;
  /// A priori bound on accumulated floating-point rounding in the coefficients.
  double rounding_allowance = 0.0;

  double error_bound() const { return truncation_bound + pruned_mass + rounding_allowance; }
};

/// Throws std::invalid_argument for N = 0 and std::length_error if the
/// coefficient cap is exceeded.
FiberCorrection fiber_correction(const SkewProduct& F, Direction dir, unsigned order,
                                 const FiberCorrectionOptions& options = {});

/// Residual sup over a grid of |lambda c(f x) - d gamma_x(e) - c(x)|.
double recurrence_residual(const SkewProduct& F, const FiberCorrection& c, std::size_t grid);

/// alpha = dt - a dx - b dy with (a, b) . e_delta = c_delta, so that
/// ker alpha = E^s + E^u. Throws if the eigenvectors are numerically collinear.
OneForm joint_bundle_form(const FiberCorrection& stable, const FiberCorrection& unstable);

/// The invariant graph {(x, theta + mu(x))}.
struct GraphLeaf {
  double theta = 0.0;
  TrigField mu{2};
};

/// Samples points on the leaf, maps them by F and returns the largest circle
/// distance between the image fiber coordinate and theta + mu(f x).
double leaf_invariance_check(const SkewProduct& F, const GraphLeaf& leaf, std::size_t samples,
                             std::uint64_t seed = 1);

/// max |alpha(d_x, d_x mu)|, |alpha(d_y, d_y mu)| over an n x n grid on graph(mu).
/// Throws TransversalityError if |v_t| < 1e-8 somewhere on the grid.
double graph_tangency_check(const OneForm& alpha, const TrigField& mu, std::size_t grid);

/// Independent cross-check for the unstable (stable) slope at p: pushes a generic
/// base vector forward (backward) by the 3x3 Jacobians along `steps` orbit points
/// and reads off the limiting slope. Orbit points are computed from exact integer
/// matrix powers.
double cone_slope(const SkewProduct& F, Direction dir, const std::array<double, 2>& p, unsigned steps = 30);

}  // namespace skewlab
