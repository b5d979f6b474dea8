// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skewlab/charfol.hpp"
#include "skewlab/cocycles.hpp"
#include "skewlab/forms.hpp"
#include "skewlab/lab/runner.hpp"
#include "skewlab/splitting.hpp"

using namespace skewlab;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

const fs::path kScenarios = SKEWLAB_SCENARIO_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [X]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

int failures = 0;

void criterion(int n, const char* title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0) out.require(secs < budget_seconds, "runtime " + fmt("%.2f", secs) + " s < " + fmt("%g", budget_seconds) + " s");
  else out.detail += "; runtime " + fmt("%.2f", secs) + " s";
  if (!out.pass) ++failures;
  std::printf("%s criterion %2d (%s): %s\n", out.pass ? "PASS" : "FAIL", n, title, out.detail.c_str());
  std::fflush(stdout);
}

const ToralAutomorphism kCat = ToralAutomorphism::cat_map();
const TrigField kMu = TrigField::harmonic(2, make_frequency({1, 0}), 0.0, 0.1);

TrigField coboundary() { return coboundary_from_transfer(kMu, kCat); }

TrigField random_field(std::mt19937_64& rng, int radius, double amplitude) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  TrigField f(2);
  for (int a = 0; a <= radius; ++a)
    for (int b = -radius; b <= radius; ++b) {
      if ((a == 0 && b <= 0) || a * a + b * b > radius * radius) continue;
      f.add_harmonic(make_frequency({a, b}), u(rng), u(rng));
    }
  f.add_harmonic(Frequency{}, u(rng), 0.0);
  return f;
}

// sup |fd - exact| / max(1, sup |exact|) for d/d(axis) of f over the sample points.
double fd_relative(const std::function<double(const Point3&)>& f, const std::function<double(const Point3&)>& exact,
                   int axis, const std::vector<Point3>& pts) {
  constexpr double h = 1e-4;
  double err = 0.0, scale = 1.0;
  for (const auto& p : pts) {
    Point3 a = p, b = p;
    a[axis] += h;
    b[axis] -= h;
    const double fd = (f(a) - f(b)) / (2 * h);
    const double ex = exact(p);
    err = std::max(err, std::abs(fd - ex));
    scale = std::max(scale, std::abs(ex));
  }
  return err / scale;
}

std::function<double(const Point3&)> planar(const TrigField& f) {
  return [&f](const Point3& p) { return f(std::array<double, 2>{p[0], p[1]}); };
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  std::printf("skewlab acceptance suite\n");

  criterion(1, "coboundary identity", 1.0, [] {
    Outcome o;
    const TrigField gamma = coboundary();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const TorusPoint x{u(rng), u(rng)};
      worst = std::max(worst, circle_distance(kMu(kCat.apply(x)) - kMu(x), gamma(x)));
    }
    o.require(worst < 1e-12, "max circle distance " + sci(worst) + " < 1e-12 over 10^4 points");
    return o;
  });

  criterion(2, "periodic-orbit obstruction", 10.0, [] {
    Outcome o;
    const TrigField gamma = coboundary();
    double worst = 0.0;
    std::size_t entries = 0;
    bool all_zero = true;
    for (unsigned k = 1; k <= 3; ++k) {
      const auto rep = livsic_obstruction(gamma, kCat, 8, k);
      worst = std::max(worst, rep.worst);
      entries += rep.entries.size();
      all_zero = all_zero && rep.all_zero;
    }
    o.require(all_zero && worst < 1e-10,
              "coboundary worst " + sci(worst) + " < 1e-10 over " + std::to_string(entries) + " orbit entries, m <= 8, k <= 3");
    const auto p8 = periodic_points_exact(kCat, 8);
    o.require(p8.size() == 2205, "period-8 count " + std::to_string(p8.size()) + " = 2205");
    const auto report = lab::run_scenario(kScenarios / "obstructed-catmap.scenario");
    const double fixed = report.find("obstruction")->results["fixed_point_value"].get<double>();
    o.require(std::abs(fixed - 0.35) < 1e-12, "obstructed fixed-point entry " + fmt("%.15f", fixed) + " = 0.35 +- 1e-12");
    return o;
  });

  criterion(3, "solver round trip", 5.0, [] {
    Outcome o;
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const TrigField mu = random_field(rng, 4, 0.2);
      const auto sol = solve_cohomological(coboundary_from_transfer(mu, kCat), kCat);
      if (!sol.has_transfer()) {
        o.require(false, "random transfer map rejected");
        return o;
      }
      worst = std::max(worst, coefficient_distance(sol.transfer(), mu - TrigField::constant(2, mu.mean())));
    }
    o.require(worst < 1e-13, "coefficient error " + sci(worst) + " < 1e-13 on 50 maps");
    const auto cosx = solve_cohomological(TrigField::harmonic(2, make_frequency({1, 0}), 1.0, 0.0), kCat);
    const bool cos_ok = !cosx.has_transfer() && cosx.witnesses().size() == 1 &&
                        cosx.witnesses()[0].kind == OrbitWitness::Kind::kOrbitSum &&
                        cosx.witnesses()[0].representative == make_frequency({1, 0}) &&
                        std::abs(cosx.witnesses()[0].sum - 0.5) < 1e-15;
    o.require(cos_ok, "cos 2 pi x rejected with orbit-sum witness (1,0), sum 0.5");
    const auto mean = solve_cohomological(TrigField::constant(2, 0.3), kCat);
    const bool mean_ok = !mean.has_transfer() && mean.witnesses().size() == 1 &&
                         mean.witnesses()[0].kind == OrbitWitness::Kind::kMean;
    o.require(mean_ok, "constant 0.3 rejected with mean witness");
    return o;
  });

  criterion(4, "splitting tangency", 30.0, [] {
    Outcome o;
    const SkewProduct F(kCat, coboundary());
    for (auto dir : {Direction::kStable, Direction::kUnstable}) {
      const auto c = fiber_correction(F, dir, 50);
      const TrigField exact = kMu.directional_derivative(c.eigenvector);
      double grid_err = 0.0;
      for (int i = 0; i < 256; ++i)
        for (int j = 0; j < 256; ++j) {
          const TorusPoint x{i / 256.0, j / 256.0};
          grid_err = std::max(grid_err, std::abs(c.correction(x) - exact(x)));
        }
      // The l1 coefficient distance bounds the series error in sup norm without evaluation rounding.
      const double series_err = (c.correction - exact).l1_norm();
      const std::string name = to_string(dir);
      o.require(grid_err < 1e-10, name + " sup grid error " + sci(grid_err) + " < 1e-10");
      o.require(c.truncation_bound >= series_err, name + " truncation bound " + sci(c.truncation_bound) +
                                                      " >= series error " + sci(series_err));
      o.require(c.error_bound() >= grid_err,
                name + " full bound " + sci(c.error_bound()) + " >= grid error");
    }
    return o;
  });

  criterion(5, "invariant form", 60.0, [] {
    Outcome o;
    const SkewProduct F(kCat, coboundary());
    const auto sol = solve_cohomological(F.gamma(), kCat);
    const OneForm alpha = OneForm::dt_minus_differential(sol.transfer());
    const Grid3 grid{128, 128, 64};
    const double pull = pullback_invariance_residual(F, alpha, grid);
    o.require(pull < 1e-11, "pullback residual " + sci(pull) + " < 1e-11");
    const auto lem = lemma41_check(F, alpha, grid);
    o.require(lem.residual < 1e-11, "invariance identity residual " + sci(lem.residual) + " < 1e-11");
    return o;
  });

  criterion(6, "invariant foliation", 0.0, [] {
    Outcome o;
    const SkewProduct F(kCat, coboundary());
    const auto sol = solve_cohomological(F.gamma(), kCat);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i)
      worst = std::max(worst, leaf_invariance_check(F, GraphLeaf{i / 64.0, sol.transfer()}, 10000, 1 + i));
    o.require(worst < 1e-12, "max leaf defect " + sci(worst) + " < 1e-12 over 64 thetas x 10^4 samples");
    return o;
  });

  criterion(7, "Frobenius and contact", 0.0, [] {
    Outcome o;
    const SkewProduct F(kCat, coboundary());
    const auto joint = joint_bundle_form(fiber_correction(F, Direction::kStable, 50),
                                         fiber_correction(F, Direction::kUnstable, 50));
    const Grid3 grid{128, 128, 64};
    const auto fr = frobenius_test(joint, grid);
    o.require(fr.max_abs < 1e-9, "joint form max|a^da| " + sci(fr.max_abs) + " < 1e-9");

    const OneForm standard(TrigField::harmonic(3, make_frequency({0, 0, 1}), 1.0, 0.0),
                           TrigField::harmonic(3, make_frequency({0, 0, 1}), 0.0, 1.0), TrigField(3));
    const ThreeForm w = wedge(standard, exterior_derivative(standard));
    double dev = 0.0;
    const Grid3 g{32, 32, 64};
    for (std::size_t i = 0; i < g.nx; ++i)
      for (std::size_t j = 0; j < g.ny; ++j)
        for (std::size_t k = 0; k < g.nt; ++k) dev = std::max(dev, std::abs(w.coef(g.point(i, j, k)) + 2 * pi));
    o.require(dev < 1e-10, "standard form wedge deviation from -2pi " + sci(dev) + " < 1e-10");
    const auto ct = contact_test(standard, g);
    o.require(ct.verdict == ContactVerdict::kContact, std::string("verdict ") + to_string(ct.verdict));
    const TwoForm da = exterior_derivative(standard);
    double norm = 0.0, kernel = 0.0;
    for (std::size_t i = 0; i < g.nx; i += 4)
      for (std::size_t j = 0; j < g.ny; j += 4)
        for (std::size_t k = 0; k < g.nt; ++k) {
          const Point3 p = g.point(i, j, k);
          const auto r = reeb_field(standard, p);
          const Covector a = standard.at(p);
          const Bivector b = da.at(p);
          norm = std::max(norm, std::abs(a[0] * r[0] + a[1] * r[1] + a[2] * r[2] - 1.0));
          // i_R d alpha for d alpha = xy dx^dy + xt dx^dt + yt dy^dt.
          const double cx = -b.xy * r[1] - b.xt * r[2];
          const double cy = b.xy * r[0] - b.yt * r[2];
          const double ct2 = b.xt * r[0] + b.yt * r[1];
          kernel = std::max({kernel, std::abs(cx), std::abs(cy), std::abs(ct2)});
        }
    o.require(norm < 1e-10 && kernel < 1e-10, "Reeb |a(R)-1| " + sci(norm) + ", |i_R da| " + sci(kernel) + " < 1e-10");
    return o;
  });

  criterion(8, "characteristic foliation", 0.0, [] {
    Outcome o;
    const auto sc = lab::load_scenario(kScenarios / "coboundary-catmap.scenario");
    const auto sol = solve_cohomological(coboundary(), kCat);
    const auto x = characteristic_field(OneForm::dt_minus_differential(sol.transfer()), SurfaceGraph{*sc.surface});
    const bool div_zero = divergence(x).is_zero();
    o.require(div_zero, "divergence is the zero field");
    const auto pts = singular_points(x);
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(p.divergence));
    o.require(pts.size() >= 2, std::to_string(pts.size()) + " singular points >= 2");
    o.require(worst < 1e-10, "max |div| at singular points " + sci(worst) + " < 1e-10");
    const auto v = contact_verdict(pts, x);
    o.require(v.kind == CharfolVerdictKind::kNotContact, std::string("verdict ") + to_string(v.kind));

    std::mt19937_64 rng(8);
    bool all_zero = true;
    for (int s = 0; s < 20; ++s) {
      const TrigField mu = random_field(rng, 2, 0.2), h = random_field(rng, 2, 0.2);
      all_zero = all_zero && divergence(characteristic_field(OneForm::dt_minus_differential(mu), SurfaceGraph{h})).is_zero();
    }
    o.require(all_zero, "divergence zero for 20 random (mu, h)");
    return o;
  });

  criterion(9, "oracle cross-checks", 0.0, [] {
    Outcome o;
    const TrigField gamma = coboundary();
    const SkewProduct F(kCat, gamma);
    const auto sc = lab::load_scenario(kScenarios / "coboundary-catmap.scenario");
    const TrigField& h = *sc.surface;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point3> pts(200);
    for (auto& p : pts) p = {u(rng), u(rng), u(rng)};

    double grad = 0.0;
    for (const TrigField* f : {&gamma, &kMu, &h})
      for (int axis = 0; axis < 2; ++axis) grad = std::max(grad, fd_relative(planar(*f), planar(f->derivative(axis)), axis, pts));
    // The skew-product Jacobian row for t and the characteristic field's divergence terms.
    for (int axis = 0; axis < 2; ++axis) {
      auto t_of = [&](const Point3& p) { return p[2] + gamma(std::array<double, 2>{p[0], p[1]}); };
      auto jac = [&, axis](const Point3& p) { return F.jacobian(p)[2][axis]; };
      grad = std::max(grad, fd_relative(t_of, jac, axis, pts));
    }
    const auto x = characteristic_field(OneForm::dt_minus_differential(kMu), SurfaceGraph{h});
    grad = std::max(grad, fd_relative(planar(x.x1), planar(x.x1.derivative(0)), 0, pts));
    grad = std::max(grad, fd_relative(planar(x.x2), planar(x.x2.derivative(1)), 1, pts));
    o.require(grad < 1e-6, "analytic gradients vs central differences, rel " + sci(grad) + " < 1e-6");

    const OneForm standard(TrigField::harmonic(3, make_frequency({0, 0, 1}), 1.0, 0.0),
                           TrigField::harmonic(3, make_frequency({0, 0, 1}), 0.0, 1.0), TrigField(3));
    const auto joint = joint_bundle_form(fiber_correction(F, Direction::kStable, 50),
                                         fiber_correction(F, Direction::kUnstable, 50));
    const OneForm closed = OneForm::dt_minus_differential(kMu);
    double ext = 0.0;
    for (const OneForm* a : {&joint, &standard, &closed}) {
      const TwoForm d = exterior_derivative(*a);
      auto fn = [](const TrigField& f) { return std::function<double(const Point3&)>([&f](const Point3& p) { return f(p); }); };
      // d alpha components are differences of partials; check each partial against the difference quotient.
      ext = std::max(ext, fd_relative(fn(a->dy), fn(a->dy.derivative(0)), 0, pts));
      ext = std::max(ext, fd_relative(fn(a->dx), fn(a->dx.derivative(1)), 1, pts));
      ext = std::max(ext, fd_relative(fn(a->dx), fn(a->dx.derivative(2)), 2, pts));
      ext = std::max(ext, fd_relative(fn(a->dt), fn(a->dt.derivative(0)), 0, pts));
      ext = std::max(ext, fd_relative(fn(a->dy), fn(a->dy.derivative(2)), 2, pts));
      ext = std::max(ext, fd_relative(fn(a->dt), fn(a->dt.derivative(1)), 1, pts));
      // Assembled components.
      double err = 0.0, scale = 1.0;
      constexpr double hh = 1e-4;
      for (const auto& p : pts) {
        auto partial = [&](const TrigField& f, int axis) {
          Point3 pa = p, pb = p;
          pa[axis] += hh;
          pb[axis] -= hh;
          return (f(pa) - f(pb)) / (2 * hh);
        };
        const Bivector ex = d.at(p);
        err = std::max({err, std::abs(partial(a->dy, 0) - partial(a->dx, 1) - ex.xy),
                        std::abs(partial(a->dt, 0) - partial(a->dx, 2) - ex.xt),
                        std::abs(partial(a->dt, 1) - partial(a->dy, 2) - ex.yt)});
        scale = std::max({scale, std::abs(ex.xy), std::abs(ex.xt), std::abs(ex.yt)});
      }
      ext = std::max(ext, err / scale);
    }
    o.require(ext < 1e-6, "exterior derivative vs central differences, rel " + sci(ext) + " < 1e-6");

    double cone = 0.0;
    for (auto dir : {Direction::kStable, Direction::kUnstable}) {
      const auto c = fiber_correction(F, dir, 50);
      std::mt19937_64 prng(90);
      for (int i = 0; i < 100; ++i) {
        const std::array<double, 2> p{u(prng), u(prng)};
        cone = std::max(cone, std::abs(cone_slope(F, dir, p) - c.correction(TorusPoint{p[0], p[1]})));
      }
    }
    o.require(cone < 1e-8, "cone iteration vs series " + sci(cone) + " < 1e-8 on 100 points per direction");
    return o;
  });

  criterion(10, "determinism", 0.0, [] {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "skewlab-acceptance";
    fs::remove_all(root);
    bool same = true;
    std::string names;
    for (const auto& entry : fs::directory_iterator(kScenarios)) {
      if (entry.path().extension() != ".scenario") continue;
      const auto stem = entry.path().stem().string();
      lab::write_report(lab::run_scenario(entry.path()), root / stem / "a");
      lab::write_report(lab::run_scenario(entry.path()), root / stem / "b");
      for (const auto& f : fs::directory_iterator(root / stem / "a")) {
        if (f.path().filename() == "timing.json") continue;
        same = same && read_file(f.path()) == read_file(root / stem / "b" / f.path().filename());
      }
      names += (names.empty() ? "" : ", ") + stem;
    }
    o.require(same, "report.json and CSVs byte-identical across two runs of " + names);
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
