#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/forms.hpp"
#include "skewlab/trig_field.hpp"

namespace skewlab {

/// Surface S = {(x, y, h(x, y))} in T^2 x S^1. The chart coordinates are the
/// base coordinates (x, y) and the area form is dx^dy pulled back by the projection.
struct SurfaceGraph {
  TrigField h{2};
};

/// Vector field X = X1 d/dx + X2 d/dy on the chart.
struct PlanarVectorField {
  TrigField x1{2};
  TrigField x2{2};

  std::array<double, 2> at(const std::array<double, 2>& p) const { return {x1(p), x2(p)}; }
  bool is_constant() const { return x1.is_constant() && x2.is_constant(); }
};

/// Characteristic field of ker alpha on S, defined by i_X omega = i_S^* alpha
/// with omega = dx^dy and i_X omega = omega(X, .) = X1 dy - X2 dx.
/// For alpha = dt - d mu this is (d_y H, -d_x H) with H = h - mu, the
/// Hamiltonian field -J0 grad H. alpha must not depend on t.
PlanarVectorField characteristic_field(const OneForm& alpha, const SurfaceGraph& surface);

/// i_X omega as a pair of coefficients (dx, dy) on the chart.
std::array<TrigField, 2> contract_area_form(const PlanarVectorField& x);

/// sup-norm bound (l1 of coefficients) of X + J0 grad H, J0 the rotation by +pi/2.
/// Zero exactly when X is the Hamiltonian field of H for the flat triple.
double hamiltonian_form_check(const PlanarVectorField& x, const TrigField& h);

/// d_x X1 + d_y X2, the divergence with respect to dx^dy.
TrigField divergence(const PlanarVectorField& x);

enum class CriticalType { kElliptic, kHyperbolic, kDegenerate };
const char* to_string(CriticalType t);

struct SingularPointRecord {
  std::array<double, 2> location{};
  double divergence = 0.0;
  CriticalType type = CriticalType::kDegenerate;
  /// |X| after Newton polishing.
  double residual = 0.0;
};

/// Axis-aligned chart window [x0, x1] x [y0, y1] in lifted coordinates.
struct ChartWindow {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool contains(const std::array<double, 2>& p) const;
};

struct SingularPointOptions {
  std::size_t seeds = 64;
  unsigned max_iterations = 60;
  double residual_tol = 1e-10;
  double dedupe_distance = 1e-6;
  /// |det DX| below this marks a singular point as degenerate.
  double degenerate_tol = 1e-8;
  std::optional<ChartWindow> window;
};

/// Zeros of X found by Newton iteration from a seeds x seeds grid, deduplicated
/// by circle distance and sorted lexicographically. Seeds that do not converge
/// are dropped. Classification uses det DX, which for a Hamiltonian field
/// equals the Hessian determinant of H.
std::vector<SingularPointRecord> singular_points(const PlanarVectorField& x, const SingularPointOptions& options = {});

enum class CharfolVerdictKind { kCompatibleWithContact, kNotContact, kInconclusive };
const char* to_string(CharfolVerdictKind k);

struct CharfolVerdict {
  CharfolVerdictKind kind = CharfolVerdictKind::kInconclusive;
  /// True for a compatible verdict reached with no singular points at all.
  bool vacuous = false;
  std::optional<SingularPointRecord> violating;
  std::size_t violations = 0;
};

/// A field is compatible with the characteristic foliation of a contact
/// structure iff its divergence is nonzero at every singular point.
CharfolVerdict contact_verdict(const std::vector<SingularPointRecord>& records, const PlanarVectorField& x,
                               double tolerance = 1e-8);

}  // namespace skewlab
