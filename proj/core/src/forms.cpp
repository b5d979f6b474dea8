#include "skewlab/forms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace skewlab {

namespace {

TrigField promote(TrigField f) {
  if (f.dim() == 3) return f;
  if (f.dim() == 2) return f.extended(3);
  throw std::invalid_argument("OneForm: coefficient fields must live on T^2 or T^2 x S^1");
}

Eigen::Matrix3d to_eigen(const Matrix3& m) {
  Eigen::Matrix3d e;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e(r, c) = m[r][c];
  return e;
}

Eigen::Matrix3d antisymmetric(const Bivector& b) {
  Eigen::Matrix3d m;
  m << 0.0, b.xy, b.xt,  //
      -b.xy, 0.0, b.yt,  //
      -b.xt, -b.yt, 0.0;
  return m;
}

double max_abs_diff(const Covector& a, const Covector& b) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <typename Fn>
void for_each_point(const Grid3& g, Fn&& fn) {
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t k = 0; k < g.nt; ++k) fn(g.point(i, j, k));
}

std::string describe(const Point3& p) {
  std::ostringstream os;
  os << '(' << p[0] << ", " << p[1] << ", " << p[2] << ')';
  return os.str();
}

}  // namespace

double wedge(const Covector& a, const Bivector& b) { return a[0] * b.yt - a[1] * b.xt + a[2] * b.xy; }

OneForm::OneForm(TrigField a_x, TrigField a_y, TrigField v_t)
    : dx(promote(std::move(a_x))), dy(promote(std::move(a_y))), dt(promote(std::move(v_t))) {}

OneForm OneForm::dt_minus_differential(const TrigField& mu) {
  return OneForm(-mu.derivative(0), -mu.derivative(1), TrigField::constant(2, 1.0));
}

Covector OneForm::at(const Point3& p) const { return {dx(p), dy(p), dt(p)}; }

bool OneForm::depends_on_t() const { return dx.depends_on(2) || dy.depends_on(2) || dt.depends_on(2); }

Bivector TwoForm::at(const Point3& p) const { return {xy(p), xt(p), yt(p)}; }

TwoForm exterior_derivative(const OneForm& a) {
  // d(P dx + Q dy + R dt) = (Q_x - P_y) dx^dy + (R_x - P_t) dx^dt + (R_y - Q_t) dy^dt
  TwoForm d;
  d.xy = a.dy.derivative(0) - a.dx.derivative(1);
  d.xt = a.dt.derivative(0) - a.dx.derivative(2);
  d.yt = a.dt.derivative(1) - a.dy.derivative(2);
  return d;
}

ThreeForm exterior_derivative(const TwoForm& b) {
  ThreeForm d;
  d.coef = b.xy.derivative(2) - b.xt.derivative(1) + b.yt.derivative(0);
  return d;
}

ThreeForm wedge(const OneForm& a, const TwoForm& b) {
  ThreeForm w;
  w.coef = a.dx * b.yt - a.dy * b.xt + a.dt * b.xy;
  return w;
}

const char* to_string(IntegrabilityVerdict v) {
  switch (v) {
    case IntegrabilityVerdict::kIntegrable: return "integrable";
    case IntegrabilityVerdict::kNonIntegrable: return "non-integrable";
    case IntegrabilityVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(ContactVerdict v) {
  switch (v) {
    case ContactVerdict::kContact: return "contact";
    case ContactVerdict::kNotContact: return "not-contact";
    case ContactVerdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

FrobeniusReport frobenius_test(const OneForm& alpha, const Grid3& grid, const Tolerances& tol) {
  const ThreeForm w = wedge(alpha, exterior_derivative(alpha));
  FrobeniusReport rep;
  for_each_point(grid, [&](const Point3& p) {
    const double v = std::abs(w.coef(p));
    if (v > rep.max_abs) {
      rep.max_abs = v;
      rep.argmax = p;
    }
  });
  if (rep.max_abs < tol.zero)
    rep.verdict = IntegrabilityVerdict::kIntegrable;
  else if (rep.max_abs > tol.nonvanishing)
    rep.verdict = IntegrabilityVerdict::kNonIntegrable;
  else
    rep.verdict = IntegrabilityVerdict::kInconclusive;
  return rep;
}

ContactReport contact_test(const OneForm& alpha, const Grid3& grid, const Tolerances& tol) {
  constexpr std::size_t kMaxSamples = 8;
  const ThreeForm w = wedge(alpha, exterior_derivative(alpha));
  ContactReport rep;
  rep.min_abs = std::numeric_limits<double>::infinity();
  bool seen_pos = false, seen_neg = false;
  for_each_point(grid, [&](const Point3& p) {
    const double v = w.coef(p);
    if (std::abs(v) < rep.min_abs) {
      rep.min_abs = std::abs(v);
      rep.argmin = p;
    }
    if (v > tol.zero) seen_pos = true;
    if (v < -tol.zero) seen_neg = true;
    if (std::abs(v) < tol.zero && rep.degenerate_samples.size() < kMaxSamples) rep.degenerate_samples.push_back(p);
  });
  if (grid.size() == 0) rep.min_abs = 0.0;
  rep.sign_change = seen_pos && seen_neg;
  if (rep.sign_change && rep.degenerate_samples.size() < kMaxSamples) rep.degenerate_samples.push_back(rep.argmin);
  if (rep.min_abs < tol.zero || rep.sign_change)
    rep.verdict = ContactVerdict::kNotContact;
  else if (rep.min_abs > tol.nonvanishing)
    rep.verdict = ContactVerdict::kContact;
  else
    rep.verdict = ContactVerdict::kInconclusive;
  return rep;
}

std::array<double, 3> reeb_field(const OneForm& alpha, const Point3& p) {
  const Covector a = alpha.at(p);
  const Bivector b = exterior_derivative(alpha).at(p);
  const Eigen::Vector3d av(a[0], a[1], a[2]);
  if (av.norm() == 0.0) throw NotContactError("reeb_field: alpha vanishes at " + describe(p));

  // Orthonormal basis of ker alpha.
  Eigen::Index least = 0;
  av.cwiseAbs().minCoeff(&least);
  const Eigen::Vector3d helper = Eigen::Vector3d::Unit(least);
  const Eigen::Vector3d e1 = av.cross(helper).normalized();
  const Eigen::Vector3d e2 = av.cross(e1).normalized();

  // Rows: alpha(R) = 1, d alpha(R, e1) = 0, d alpha(R, e2) = 0.
  const Eigen::Matrix3d bm = antisymmetric(b);
  Eigen::Matrix3d m;
  m.row(0) = av.transpose();
  m.row(1) = (bm * e1).transpose();
  m.row(2) = (bm * e2).transpose();
  if (std::abs(m.determinant()) < 1e-8) throw NotContactError("reeb_field: alpha is not contact at " + describe(p));
  const Eigen::Vector3d r = m.fullPivLu().solve(Eigen::Vector3d(1.0, 0.0, 0.0));
  return {r(0), r(1), r(2)};
}

Covector pullback(const SkewProduct& F, const OneForm& alpha, const Point3& p) {
  const Covector a = alpha.at(F.apply(p));
  const Matrix3 j = F.jacobian(p);
  Covector out{};
  for (int c = 0; c < 3; ++c) out[c] = a[0] * j[0][c] + a[1] * j[1][c] + a[2] * j[2][c];
  return out;
}

Bivector pullback(const SkewProduct& F, const TwoForm& beta, const Point3& p) {
  const Eigen::Matrix3d j = to_eigen(F.jacobian(p));
  const Eigen::Matrix3d m = j.transpose() * antisymmetric(beta.at(F.apply(p))) * j;
  return {m(0, 1), m(0, 2), m(1, 2)};
}

namespace {

struct Lemma41Point {
  double residual = 0.0;
  Covector ap{}, aq{};
};

Lemma41Point lemma41_point(const SkewProduct& F, const OneForm& alpha, const Point3& p) {
  constexpr double kTransversal = 1e-8;
  const auto& a = F.base().matrix();
  const auto& dg = F.gamma_gradient();
  Lemma41Point out;
  out.ap = alpha.at(p);
  out.aq = alpha.at(F.apply(p));
  const Covector& ap = out.ap;
  const Covector& aq = out.aq;
  if (std::abs(ap[2]) < kTransversal || std::abs(aq[2]) < kTransversal)
    throw TransversalityError("lemma41_check: v_t vanishes near " + describe(std::abs(ap[2]) < kTransversal ? p : F.apply(p)));

  // beta/v at p and at F(p); the pullback of a form without dt part is (w A, 0).
  const double bp0 = ap[0] / ap[2], bp1 = ap[1] / ap[2];
  const double bq0 = aq[0] / aq[2], bq1 = aq[1] / aq[2];
  const std::array<double, 2> xy{p[0], p[1]};
  const double g0 = dg[0](xy), g1 = dg[1](xy);
  for (std::size_t c = 0; c < 2; ++c) {
    const double lhs = bq0 * static_cast<double>(a(0, c)) + bq1 * static_cast<double>(a(1, c)) - (c == 0 ? bp0 : bp1);
    const double rhs = -(c == 0 ? g0 : g1);
    out.residual = std::max(out.residual, std::abs(lhs - rhs));
  }
  return out;
}

}  // namespace

double lemma41_residual(const SkewProduct& F, const OneForm& alpha, const Point3& p) {
  return lemma41_point(F, alpha, p).residual;
}

Lemma41Report lemma41_check(const SkewProduct& F, const OneForm& alpha, const Grid3& grid) {
  Lemma41Report rep;
  rep.conformal.multiplier_min = std::numeric_limits<double>::infinity();
  rep.conformal.multiplier_max = -std::numeric_limits<double>::infinity();

  for_each_point(grid, [&](const Point3& p) {
    const Lemma41Point lp = lemma41_point(F, alpha, p);
    if (lp.residual > rep.residual) {
      rep.residual = lp.residual;
      rep.argmax = p;
    }
    const double lambda = lp.aq[2] / lp.ap[2];
    rep.conformal.multiplier_min = std::min(rep.conformal.multiplier_min, lambda);
    rep.conformal.multiplier_max = std::max(rep.conformal.multiplier_max, lambda);
    if (!(lambda > 0.0)) rep.conformal.positive = false;
    const Covector pulled = pullback(F, alpha, p);
    const Covector scaled{lambda * lp.ap[0], lambda * lp.ap[1], lambda * lp.ap[2]};
    rep.conformal.residual = std::max(rep.conformal.residual, max_abs_diff(pulled, scaled));
  });
  if (grid.size() == 0) rep.conformal.multiplier_min = rep.conformal.multiplier_max = 1.0;
  return rep;
}

double pullback_invariance_residual(const SkewProduct& F, const OneForm& alpha, const Grid3& grid) {
  double r = 0.0;
  for_each_point(grid, [&](const Point3& p) { r = std::max(r, max_abs_diff(pullback(F, alpha, p), alpha.at(p))); });
  return r;
}

}  // namespace skewlab
