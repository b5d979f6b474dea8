#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "skewlab/skew_product.hpp"
#include "skewlab/tolerances.hpp"
#include "skewlab/trig_field.hpp"

namespace skewlab {

/// A 1-form at a point, components on (dx, dy, dt).
using Covector = std::array<double, 3>;

/// A 2-form at a point, components on dx^dy, dx^dt, dy^dt.
struct Bivector {
  double xy = 0.0;
  double xt = 0.0;
  double yt = 0.0;
};

/// Coefficient of a ^ b on the volume dt^dx^dy.
double wedge(const Covector& a, const Bivector& b);

/// Thrown when a form's dt-coefficient vanishes where transversality to the fibers is required.
class TransversalityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the Reeb system is singular (dα degenerate on ker α).
class NotContactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// alpha = a_x dx + a_y dy + v_t dt on T^2 x S^1 with trig-polynomial
/// coefficients; beta_t = a_x dx + a_y dy. Coefficients are fields on T^3
/// ordered (x, y, t); fields on T^2 are promoted and do not depend on t.
struct OneForm {
  TrigField dx{3};
  TrigField dy{3};
  TrigField dt{3};

  OneForm() = default;
  OneForm(TrigField a_x, TrigField a_y, TrigField v_t);

  /// dt - d mu for mu on T^2.
  static OneForm dt_minus_differential(const TrigField& mu);

  Covector at(const Point3& p) const;
  bool depends_on_t() const;
};

struct TwoForm {
  TrigField xy{3};
  TrigField xt{3};
  TrigField yt{3};

  Bivector at(const Point3& p) const;
};

/// Coefficient of dt^dx^dy.
struct ThreeForm {
  TrigField coef{3};
};

TwoForm exterior_derivative(const OneForm& alpha);
ThreeForm exterior_derivative(const TwoForm& beta);
ThreeForm wedge(const OneForm& alpha, const TwoForm& beta);

struct Grid3 {
  std::size_t nx = 128;
  std::size_t ny = 128;
  std::size_t nt = 64;

  std::size_t size() const { return nx * ny * nt; }
  Point3 point(std::size_t i, std::size_t j, std::size_t k) const {
    return {static_cast<double>(i) / static_cast<double>(nx), static_cast<double>(j) / static_cast<double>(ny),
            static_cast<double>(k) / static_cast<double>(nt)};
  }
};

enum class IntegrabilityVerdict { kIntegrable, kNonIntegrable, kInconclusive };
enum class ContactVerdict { kContact, kNotContact, kInconclusive };

const char* to_string(IntegrabilityVerdict v);
const char* to_string(ContactVerdict v);

struct FrobeniusReport {
  double max_abs = 0.0;
  Point3 argmax{};
  IntegrabilityVerdict verdict = IntegrabilityVerdict::kIntegrable;
};

/// Samples the dt^dx^dy coefficient of alpha ^ d alpha on the grid.
FrobeniusReport frobenius_test(const OneForm& alpha, const Grid3& grid, const Tolerances& tol = {});

struct ContactReport {
  double min_abs = 0.0;
  Point3 argmin{};
  bool sign_change = false;
  /// A few grid points where the coefficient vanishes or changes sign.
  std::vector<Point3> degenerate_samples;
  ContactVerdict verdict = ContactVerdict::kContact;
};

ContactReport contact_test(const OneForm& alpha, const Grid3& grid, const Tolerances& tol = {});

/// The vector R with alpha(R) = 1 and d alpha(R, .) = 0 at p, components (x, y, t).
/// Throws NotContactError when the defining system is singular beyond 1e-8.
std::array<double, 3> reeb_field(const OneForm& alpha, const Point3& p);

/// (F^* alpha)_p = alpha_{F(p)} o DF_p.
Covector pullback(const SkewProduct& F, const OneForm& alpha, const Point3& p);
/// (F^* beta)_p for a 2-form.
Bivector pullback(const SkewProduct& F, const TwoForm& beta, const Point3& p);

/// Fitted conformal factor in F^* alpha = lambda alpha.
struct ConformalResidual {
  double multiplier_min = 0.0;
  double multiplier_max = 0.0;
  bool positive = true;
  /// sup |F^* alpha - lambda_hat alpha| over the grid.
  double residual = 0.0;
};

struct Lemma41Report {
  /// sup |F^*(beta_t / v_t) - beta_t / v_t + d gamma| over the grid.
  double residual = 0.0;
  Point3 argmax{};
  ConformalResidual conformal;
};

/// Checks the invariance identity for ker alpha under F(x, t) = (f x, t + gamma(x)),
/// whose fiber maps have derivative 1:  F^*(beta/v) - beta/v = -d gamma.
/// The multiplier is fitted pointwise as lambda_hat(p) = v_t(F p) / v_t(p).
/// Throws TransversalityError if |v_t| < 1e-8 at a grid point.
Lemma41Report lemma41_check(const SkewProduct& F, const OneForm& alpha, const Grid3& grid);

/// The lemma41_check residual at a single point.
double lemma41_residual(const SkewProduct& F, const OneForm& alpha, const Point3& p);

/// sup over the grid of |F^* alpha - alpha| (conformal factor fixed to 1).
double pullback_invariance_residual(const SkewProduct& F, const OneForm& alpha, const Grid3& grid);

}  // namespace skewlab
