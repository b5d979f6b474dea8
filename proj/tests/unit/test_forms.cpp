#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "random_fields.hpp"
#include "skewlab/cocycles.hpp"
#include "skewlab/forms.hpp"

using namespace skewlab;
using std::numbers::pi;

namespace {

const TrigField kMu = TrigField::harmonic(2, make_frequency({1, 0}), 0.0, 0.1);

OneForm standard_form(double scale = 1.0) {
  return OneForm(TrigField::harmonic(3, make_frequency({0, 0, 1}), scale, 0.0),
                 TrigField::harmonic(3, make_frequency({0, 0, 1}), 0.0, scale), TrigField(3));
}

OneForm random_form(std::mt19937_64& rng, int radius, bool t_dependent) {
  const std::size_t dim = t_dependent ? 3 : 2;
  return OneForm(testing::random_field(rng, dim, radius, 0.3), testing::random_field(rng, dim, radius, 0.3),
                 testing::random_field(rng, dim, radius, 0.3));
}

Point3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(rng), u(rng), u(rng)};
}

// F^* alpha as a form, valid when alpha does not depend on t.
OneForm symbolic_pullback(const SkewProduct& F, const OneForm& alpha) {
  const IntMatrix a3{{F.base().matrix()(0, 0), F.base().matrix()(0, 1), 0},
                     {F.base().matrix()(1, 0), F.base().matrix()(1, 1), 0},
                     {0, 0, 1}};
  const TrigField p = alpha.dx.compose_linear(a3), q = alpha.dy.compose_linear(a3), r = alpha.dt.compose_linear(a3);
  const auto& m = F.base().matrix();
  const TrigField gx = F.gamma_gradient()[0].extended(3), gy = F.gamma_gradient()[1].extended(3);
  return OneForm(p * static_cast<double>(m(0, 0)) + q * static_cast<double>(m(1, 0)) + r * gx,
                 p * static_cast<double>(m(0, 1)) + q * static_cast<double>(m(1, 1)) + r * gy, r);
}

}  // namespace

TEST_CASE("exterior derivative examples") {
  const TwoForm closed = exterior_derivative(OneForm::dt_minus_differential(kMu));
  CHECK(closed.xy.is_zero());
  CHECK(closed.xt.is_zero());
  CHECK(closed.yt.is_zero());

  const TwoForm ds = exterior_derivative(standard_form());
  CHECK(ds.xy.is_zero());
  CHECK(ds.xt == TrigField::harmonic(3, make_frequency({0, 0, 1}), 0.0, 2 * pi));
  CHECK(ds.yt == TrigField::harmonic(3, make_frequency({0, 0, 1}), -2 * pi, 0.0));
}

TEST_CASE("d o d vanishes identically") {
  std::mt19937_64 rng(41);
  for (int s = 0; s < 20; ++s) CHECK(exterior_derivative(exterior_derivative(random_form(rng, 3, true))).coef.is_zero());
}

TEST_CASE("exterior derivative agrees with central differences") {
  std::mt19937_64 rng(43);
  constexpr double h = 1e-4;
  // Radius 2 keeps the h^2 truncation, (2 pi |k| h)^2 / 6 per mode, near 3e-7.
  for (int s = 0; s < 10; ++s) {
    const OneForm alpha = random_form(rng, 2, true);
    const TwoForm d = exterior_derivative(alpha);
    for (int i = 0; i < 20; ++i) {
      const Point3 p = random_point(rng);
      auto partial = [&](const TrigField& f, int axis) {
        Point3 a = p, b = p;
        a[axis] += h;
        b[axis] -= h;
        return (f(a) - f(b)) / (2 * h);
      };
      const Bivector fd{partial(alpha.dy, 0) - partial(alpha.dx, 1), partial(alpha.dt, 0) - partial(alpha.dx, 2),
                        partial(alpha.dt, 1) - partial(alpha.dy, 2)};
      const Bivector ex = d.at(p);
      const double scale = std::max({1.0, std::abs(ex.xy), std::abs(ex.xt), std::abs(ex.yt)});
      const double err = std::max({std::abs(fd.xy - ex.xy), std::abs(fd.xt - ex.xt), std::abs(fd.yt - ex.yt)});
      CHECK(err / scale < 1e-6);
    }
  }
}

TEST_CASE("wedge and verdicts") {
  const ThreeForm w = wedge(standard_form(), exterior_derivative(standard_form()));
  CHECK(w.coef == TrigField::constant(3, -2 * pi));

  const Grid3 grid{16, 16, 16};
  const auto closed = OneForm::dt_minus_differential(kMu);
  CHECK(frobenius_test(closed, grid).verdict == IntegrabilityVerdict::kIntegrable);
  CHECK(frobenius_test(closed, grid).max_abs == 0.0);
  CHECK(contact_test(closed, grid).verdict == ContactVerdict::kNotContact);

  const auto fs = frobenius_test(standard_form(), grid);
  CHECK(fs.verdict == IntegrabilityVerdict::kNonIntegrable);
  CHECK(fs.max_abs == doctest::Approx(2 * pi));
  const auto cs = contact_test(standard_form(), grid);
  CHECK(cs.verdict == ContactVerdict::kContact);
  CHECK(cs.min_abs == doctest::Approx(2 * pi));
  CHECK_FALSE(cs.sign_change);

  // dt + 0.1 sin(2 pi x) dy: the wedge 0.2 pi cos(2 pi x) changes sign across x = 1/4.
  const OneForm eps(TrigField(2), TrigField::harmonic(2, make_frequency({1, 0}), 0.0, 0.1), TrigField::constant(2, 1.0));
  const auto ce = contact_test(eps, Grid3{128, 16, 4});
  CHECK(ce.min_abs < 1e-15);
  CHECK(ce.sign_change);
  CHECK_FALSE(ce.degenerate_samples.empty());
  CHECK(ce.verdict == ContactVerdict::kNotContact);
  CHECK(frobenius_test(eps, grid).verdict == IntegrabilityVerdict::kNonIntegrable);

  // A wedge of size 2 pi eps^2 between the two thresholds.
  const double e = 1e-4;
  const OneForm small(TrigField::harmonic(3, make_frequency({0, 0, 1}), e, 0.0),
                      TrigField::harmonic(3, make_frequency({0, 0, 1}), 0.0, e), TrigField::constant(3, 1.0));
  CHECK(frobenius_test(small, grid).verdict == IntegrabilityVerdict::kInconclusive);
  CHECK(contact_test(small, grid).verdict == ContactVerdict::kInconclusive);
}

TEST_CASE("verdicts are mutually consistent") {
  std::mt19937_64 rng(47);
  const Grid3 grid{8, 8, 8};
  for (int s = 0; s < 20; ++s) {
    OneForm alpha = random_form(rng, 2, s % 2 == 0);
    const double scale = std::pow(10.0, -static_cast<double>(s % 5) * 2);
    alpha.dx *= scale;
    alpha.dy *= scale;
    const auto fr = frobenius_test(alpha, grid);
    const auto co = contact_test(alpha, grid);
    if (co.verdict == ContactVerdict::kContact) CHECK(fr.verdict == IntegrabilityVerdict::kNonIntegrable);
    if (fr.verdict == IntegrabilityVerdict::kIntegrable) CHECK(co.verdict == ContactVerdict::kNotContact);
    CHECK(co.min_abs <= fr.max_abs);
  }
}

TEST_CASE("reeb field") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    const Point3 p = random_point(rng);
    const auto r = reeb_field(standard_form(), p);
    CHECK(r[0] == doctest::Approx(std::cos(2 * pi * p[2])).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(std::sin(2 * pi * p[2])).epsilon(1e-12));
    CHECK(std::abs(r[2]) < 1e-12);
    const auto r3 = reeb_field(standard_form(3.0), p);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(r3[c] - r[c] / 3.0) < 1e-12);
  }
  const OneForm dt(TrigField(2), TrigField(2), TrigField::constant(2, 1.0));
  CHECK_THROWS_AS(reeb_field(dt, Point3{0.1, 0.2, 0.3}), NotContactError);
  CHECK_THROWS_AS(reeb_field(OneForm(), Point3{0.1, 0.2, 0.3}), NotContactError);
}

TEST_CASE("pullback examples") {
  const auto f = ToralAutomorphism::cat_map();
  const TrigField gamma = coboundary_from_transfer(kMu, f);
  const SkewProduct F(f, gamma);
  const OneForm dt(TrigField(2), TrigField(2), TrigField::constant(2, 1.0));
  const OneForm dx(TrigField::constant(2, 1.0), TrigField(2), TrigField(2));
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const Point3 p = random_point(rng);
    const std::array<double, 2> xy{p[0], p[1]};
    const Covector a = pullback(F, dt, p);
    CHECK(std::abs(a[0] - F.gamma_gradient()[0](xy)) < 1e-14);
    CHECK(std::abs(a[1] - F.gamma_gradient()[1](xy)) < 1e-14);
    CHECK(a[2] == 1.0);
    const Covector b = pullback(F, dx, p);
    CHECK(b == Covector{2.0, 1.0, 0.0});
  }
  CHECK(pullback_invariance_residual(F, OneForm::dt_minus_differential(kMu), Grid3{16, 16, 4}) < 1e-12);
  CHECK(pullback_invariance_residual(F, dt, Grid3{16, 16, 4}) > 0.1);
}

TEST_CASE("pullback commutes with d") {
  std::mt19937_64 rng(61);
  const auto f = ToralAutomorphism::cat_map();
  for (int s = 0; s < 5; ++s) {
    const SkewProduct F(f, testing::random_field(rng, 2, 2, 0.2));
    const OneForm alpha = random_form(rng, 2, false);
    const TwoForm d_pulled = exterior_derivative(symbolic_pullback(F, alpha));
    const TwoForm da = exterior_derivative(alpha);
    for (int i = 0; i < 20; ++i) {
      const Point3 p = random_point(rng);
      const Bivector lhs = d_pulled.at(p);
      const Bivector rhs = pullback(F, da, p);
      CHECK(std::abs(lhs.xy - rhs.xy) < 1e-10);
      CHECK(std::abs(lhs.xt - rhs.xt) < 1e-10);
      CHECK(std::abs(lhs.yt - rhs.yt) < 1e-10);
      // The symbolic pullback matches the pointwise one.
      const Covector c = pullback(F, alpha, p);
      const Covector e = symbolic_pullback(F, alpha).at(p);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(c[k] - e[k]) < 1e-12);
    }
  }
}

TEST_CASE("invariance identity for ker alpha") {
  const auto f = ToralAutomorphism::cat_map();
  const SkewProduct F(f, coboundary_from_transfer(kMu, f));
  const Grid3 grid{16, 16, 4};
  const auto rep = lemma41_check(F, OneForm::dt_minus_differential(kMu), grid);
  CHECK(rep.residual < 1e-12);
  CHECK(rep.conformal.positive);
  CHECK(rep.conformal.multiplier_min == 1.0);
  CHECK(rep.conformal.multiplier_max == 1.0);
  CHECK(rep.conformal.residual < 1e-12);

  // dt + 0.3 dx: F^*(0.3 dx) - 0.3 dx + d gamma = (0.3 + gamma_x, 0.3 + gamma_y).
  const OneForm tilted(TrigField::constant(2, 0.3), TrigField(2), TrigField::constant(2, 1.0));
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    const Point3 p = random_point(rng);
    const std::array<double, 2> xy{p[0], p[1]};
    const double direct =
        std::max(std::abs(0.3 + F.gamma_gradient()[0](xy)), std::abs(0.3 + F.gamma_gradient()[1](xy)));
    CHECK(std::abs(lemma41_residual(F, tilted, p) - direct) < 1e-14);
  }
  CHECK(lemma41_check(F, tilted, grid).residual > 0.1);

  const OneForm dx(TrigField::constant(2, 1.0), TrigField(2), TrigField(2));
  CHECK_THROWS_AS(lemma41_check(F, dx, grid), TransversalityError);
  const auto empty = lemma41_check(F, tilted, Grid3{0, 0, 0});
  CHECK(empty.conformal.multiplier_min == 1.0);
}

TEST_CASE("trivial cocycle") {
  const SkewProduct F(ToralAutomorphism::cat_map(), TrigField(2));
  const OneForm dt(TrigField(2), TrigField(2), TrigField::constant(2, 1.0));
  CHECK(pullback(F, dt, Point3{0.3, 0.6, 0.9}) == Covector{0.0, 0.0, 1.0});
  const auto rep = lemma41_check(F, dt, Grid3{8, 8, 4});
  CHECK(rep.residual == 0.0);
  CHECK(rep.conformal.residual == 0.0);
}

TEST_CASE("a vanishing identity residual yields a conformal multiplier") {
  const auto f = ToralAutomorphism::cat_map();
  const SkewProduct F(f, coboundary_from_transfer(kMu, f));
  // alpha = c (dt - d mu) with c > 0 has the same kernel and multiplier c(f x) / c(x).
  const TrigField c = TrigField::constant(2, 1.0) + TrigField::harmonic(2, make_frequency({1, 1}), 0.3, 0.2);
  const OneForm base = OneForm::dt_minus_differential(kMu);
  const OneForm alpha(base.dx * c.extended(3), base.dy * c.extended(3), c);
  const auto rep = lemma41_check(F, alpha, Grid3{32, 32, 4});
  REQUIRE(rep.residual < 1e-10);
  CHECK(rep.conformal.residual < 1e-9);
  CHECK(rep.conformal.positive);
  CHECK(rep.conformal.multiplier_max > rep.conformal.multiplier_min);
}

TEST_CASE("t-dependent perturbation of dt") {
  // dt + 0.1 sin(2 pi t) dx: d alpha = -0.2 pi cos(2 pi t) dx^dt and alpha ^ d alpha = 0.
  const OneForm alpha(TrigField::harmonic(3, make_frequency({0, 0, 1}), 0.0, 0.1), TrigField(3),
                      TrigField::constant(3, 1.0));
  CHECK(wedge(alpha, exterior_derivative(alpha)).coef.is_zero());
  const auto rep = contact_test(alpha, Grid3{16, 16, 16});
  CHECK(rep.min_abs == 0.0);
  CHECK(rep.verdict == ContactVerdict::kNotContact);
  CHECK(frobenius_test(alpha, Grid3{16, 16, 16}).verdict == IntegrabilityVerdict::kIntegrable);
}
