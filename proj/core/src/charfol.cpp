#include "skewlab/charfol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skewlab {

PlanarVectorField characteristic_field(const OneForm& alpha, const SurfaceGraph& surface) {
  if (alpha.depends_on_t())
    throw std::invalid_argument("characteristic_field: alpha depends on t; only t-independent forms are supported");
  const TrigField p = alpha.dx.restricted(2);
  const TrigField q = alpha.dy.restricted(2);
  const TrigField r = alpha.dt.restricted(2);
  // i_S^* alpha = (P + R h_x) dx + (Q + R h_y) dy  and  i_X omega = -X2 dx + X1 dy.
  PlanarVectorField x;
  x.x1 = q + r * surface.h.derivative(1);
  x.x2 = -(p + r * surface.h.derivative(0));
  return x;
}

std::array<TrigField, 2> contract_area_form(const PlanarVectorField& x) { return {-x.x2, x.x1}; }

double hamiltonian_form_check(const PlanarVectorField& x, const TrigField& h) {
  // J0 (a, b) = (-b, a), so X + J0 grad H = (X1 - H_y, X2 + H_x).
  const TrigField r1 = x.x1 - h.derivative(1);
  const TrigField r2 = x.x2 + h.derivative(0);
  return std::max(r1.l1_norm(), r2.l1_norm());
}

TrigField divergence(const PlanarVectorField& x) { return x.x1.derivative(0) + x.x2.derivative(1); }

const char* to_string(CriticalType t) {
  switch (t) {
    case CriticalType::kElliptic: return "elliptic";
    case CriticalType::kHyperbolic: return "hyperbolic";
    case CriticalType::kDegenerate: return "degenerate";
  }
  return "?";
}

const char* to_string(CharfolVerdictKind k) {
  switch (k) {
    case CharfolVerdictKind::kCompatibleWithContact: return "compatible-with-contact";
    case CharfolVerdictKind::kNotContact: return "not-contact";
    case CharfolVerdictKind::kInconclusive: return "inconclusive";
  }
  return "?";
}

bool ChartWindow::contains(const std::array<double, 2>& p) const {
  return p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1;
}

std::vector<SingularPointRecord> singular_points(const PlanarVectorField& x, const SingularPointOptions& opt) {
  if (opt.seeds == 0) return {};
  const TrigField j11 = x.x1.derivative(0), j12 = x.x1.derivative(1);
  const TrigField j21 = x.x2.derivative(0), j22 = x.x2.derivative(1);
  const TrigField div = divergence(x);
  const ChartWindow w = opt.window.value_or(ChartWindow{});
  const double sx = (w.x1 - w.x0) / static_cast<double>(opt.seeds);
  const double sy = (w.y1 - w.y0) / static_cast<double>(opt.seeds);
  constexpr double kMaxStep = 0.05;

  std::vector<SingularPointRecord> found;
  for (std::size_t i = 0; i < opt.seeds; ++i)
    for (std::size_t j = 0; j < opt.seeds; ++j) {
      std::array<double, 2> p{w.x0 + (static_cast<double>(i) + 0.5) * sx, w.y0 + (static_cast<double>(j) + 0.5) * sy};
      double res = 0.0;
      bool converged = false;
      for (unsigned it = 0; it <= opt.max_iterations; ++it) {
        const auto v = x.at(p);
        res = std::hypot(v[0], v[1]);
        if (res < opt.residual_tol) {
          converged = true;
          break;
        }
        const double a = j11(p), b = j12(p), c = j21(p), d = j22(p);
        const double det = a * d - b * c;
        if (det == 0.0 || !std::isfinite(det)) break;
        double dx = -(d * v[0] - b * v[1]) / det;
        double dy = -(-c * v[0] + a * v[1]) / det;
        const double len = std::hypot(dx, dy);
        if (len > kMaxStep) {
          dx *= kMaxStep / len;
          dy *= kMaxStep / len;
        }
        p = {p[0] + dx, p[1] + dy};
      }
      if (!converged) continue;
      if (opt.window && !opt.window->contains(p)) continue;

      SingularPointRecord rec;
      rec.location = {wrap_unit(p[0]), wrap_unit(p[1])};
      rec.residual = res;
      rec.divergence = div(rec.location);
      const double det = j11(rec.location) * j22(rec.location) - j12(rec.location) * j21(rec.location);
      rec.type = det > opt.degenerate_tol    ? CriticalType::kElliptic
                 : det < -opt.degenerate_tol ? CriticalType::kHyperbolic
                                             : CriticalType::kDegenerate;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const SingularPointRecord& o) {
        return std::max(circle_distance(o.location[0], rec.location[0]),
                        circle_distance(o.location[1], rec.location[1])) <= opt.dedupe_distance;
      });
      if (!duplicate) found.push_back(rec);
    }
  std::sort(found.begin(), found.end(),
            [](const SingularPointRecord& a, const SingularPointRecord& b) { return a.location < b.location; });
  return found;
}

CharfolVerdict contact_verdict(const std::vector<SingularPointRecord>& records, const PlanarVectorField& x,
                               double tolerance) {
  CharfolVerdict v;
  if (records.empty()) {
    if (x.is_constant()) {
      v.kind = CharfolVerdictKind::kCompatibleWithContact;
      v.vacuous = true;
    } else {
      v.kind = CharfolVerdictKind::kInconclusive;  // refine seeds
    }
    return v;
  }
  for (const auto& r : records) {
    if (std::abs(r.divergence) <= tolerance) {
      if (!v.violating) v.violating = r;
      ++v.violations;
    }
  }
  v.kind = v.violations > 0 ? CharfolVerdictKind::kNotContact : CharfolVerdictKind::kCompatibleWithContact;
  return v;
}

}  // namespace skewlab
