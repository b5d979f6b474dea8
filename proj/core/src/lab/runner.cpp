#include "skewlab/lab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "skewlab/charfol.hpp"
#include "skewlab/cocycles.hpp"
#include "skewlab/splitting.hpp"

#ifndef SKEWLAB_VERSION
#define SKEWLAB_VERSION "unknown"
#endif

namespace skewlab::lab {

namespace {

using json = nlohmann::ordered_json;

json point_json(const Point3& p) { return json::array({p[0], p[1], p[2]}); }

json frequency_json(const Frequency& k, std::size_t dim) {
  json a = json::array();
  for (std::size_t i = 0; i < dim; ++i) a.push_back(k[i]);
  return a;
}

template <typename Fn>
void for_each_plot_point(const Grid3& g, Fn&& fn) {
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j)
      for (std::size_t k = 0; k < g.nt; ++k) fn(g.point(i, j, k));
}

// Planar slice t = 0 of the plot grid.
template <typename Fn>
void for_each_plot_xy(const Grid3& g, Fn&& fn) {
  if (g.nt == 0) return;
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j) {
      const Point3 p = g.point(i, j, 0);
      fn(std::array<double, 2>{p[0], p[1]});
    }
}

std::string alpha_source(const Scenario& sc) { return sc.form ? "form" : "joint-bundle"; }

class Runner {
 public:
  explicit Runner(const Scenario& sc) : sc_(sc), f_(sc.matrix) {
    if (sc.cocycle == CocycleKind::kTransfer)
      gamma_ = coboundary_from_transfer(sc.cocycle_field, f_);
    else if (sc.cocycle == CocycleKind::kGamma)
      gamma_ = sc.cocycle_field;
    if (gamma_ && f_.dim() == 2) F_.emplace(f_, *gamma_);
  }

  CheckRecord run(const std::string& check, Report& report) {
    CheckRecord rec;
    rec.name = check;
    const auto t0 = std::chrono::steady_clock::now();
    if (check == "obstruction") obstruction(rec, report);
    else if (check == "solve") solve(rec);
    else if (check == "splitting") splitting(rec, report);
    else if (check == "tangency") tangency(rec, report);
    else if (check == "leaf") leaf(rec, report);
    else if (check == "lemma41") lemma41(rec, report);
    else if (check == "frobenius") frobenius(rec, report);
    else if (check == "contact") contact(rec, report);
    else if (check == "reeb") reeb(rec, report);
    else if (check == "charfol") charfol(rec, report);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
  }

 private:
  const CohomologySolution& solution() {
    if (!solution_) solution_ = solve_cohomological(*gamma_, f_);
    return *solution_;
  }

  const TrigField* transfer() { return solution().has_transfer() ? &solution_->transfer() : nullptr; }

  // dt - d mu from the solver, or the scenario's [form].
  const OneForm& pipeline_form(const char* check) {
    if (sc_.form) return *sc_.form;
    if (!exact_form_) {
      const TrigField* mu = transfer();
      if (!mu)
        throw DependencyError(std::string(check) +
                              " needs a transfer map, but the cocycle has no finite-support solution; add a [form] section");
      exact_form_ = OneForm::dt_minus_differential(*mu);
    }
    return *exact_form_;
  }

  const OneForm& tested_form() { return sc_.form ? *sc_.form : *joint_; }

  const SkewProduct& skew() {
    if (!F_) throw DependencyError("this check needs a [cocycle] over a 2x2 base");
    return *F_;
  }

  void obstruction(CheckRecord& rec, Report& report) {
    const double tol = sc_.tolerances.obstruction;
    json blocks = json::array();
    json violations = json::array();
    bool all_zero = true;
    std::optional<double> fixed_point;
    auto& plot = report.plots["obstruction"].rows;
    for (unsigned k = 1; k <= sc_.max_block; ++k) {
      const ObstructionReport r = livsic_obstruction(*gamma_, f_, sc_.max_period, k, tol);
      all_zero = all_zero && r.all_zero;
      blocks.push_back({{"block", k}, {"entries", r.entries.size()}, {"worst", r.worst}, {"all_zero", r.all_zero}});
      for (const auto& e : r.entries) {
        const bool origin = std::all_of(e.representative_exact.num.begin(), e.representative_exact.num.end(),
                                        [](std::int64_t v) { return v == 0; });
        if (k == 1 && e.base_period == 1 && origin) fixed_point = e.value;
        if (k == 1) plot.push_back({e.representative[0], e.representative[1], static_cast<double>(e.period), e.value});
        if (std::abs(e.value) >= tol && violations.size() < 16) {
          json rep = json::array();
          for (std::size_t i = 0; i < e.representative_exact.dim; ++i)
            rep.push_back(std::to_string(e.representative_exact.num[i]) + "/" +
                          std::to_string(e.representative_exact.den));
          violations.push_back({{"block", k},
                                {"period", e.period},
                                {"base_period", e.base_period},
                                {"representative", rep},
                                {"value", e.value}});
        }
      }
    }
    rec.verdict = all_zero ? "all-zero" : "violated";
    rec.results = {{"max_period", sc_.max_period},
                   {"max_block", sc_.max_block},
                   {"tolerance", tol},
                   {"fixed_point_value", fixed_point ? json(*fixed_point) : json(nullptr)},
                   {"blocks", blocks},
                   {"violations", violations}};
  }

  void solve(CheckRecord& rec) {
    const CohomologySolution& s = solution();
    if (s.has_transfer()) {
      rec.verdict = "solved";
      const TrigField& mu = s.transfer();
      rec.results = {{"transfer", format_field(mu)},
                     {"coefficients", mu.size()},
                     {"residual", coefficient_distance(coboundary_from_transfer(mu, f_), *gamma_)}};
      if (sc_.cocycle == CocycleKind::kTransfer) {
        const TrigField expected = sc_.cocycle_field - TrigField::constant(2, sc_.cocycle_field.mean());
        rec.results["recovery_error"] = coefficient_distance(mu, expected);
      }
      return;
    }
    rec.verdict = "no-finite-support-solution";
    json w = json::array();
    for (const auto& o : s.witnesses()) {
      json orbit = json::array();
      for (const auto& k : o.orbit) {
        if (orbit.size() == 16) break;
        orbit.push_back(frequency_json(k, 2));
      }
      w.push_back({{"kind", o.kind == OrbitWitness::Kind::kMean ? "mean" : "orbit-sum"},
                   {"representative", frequency_json(o.representative, 2)},
                   {"sum", json::array({o.sum.real(), o.sum.imag()})},
                   {"orbit", orbit}});
    }
    rec.results = {{"witnesses", w}};
  }

  void splitting(CheckRecord& rec, Report& report) {
    const SkewProduct& F = skew();
    cs_ = fiber_correction(F, Direction::kStable, sc_.order);
    cu_ = fiber_correction(F, Direction::kUnstable, sc_.order);
    joint_ = joint_bundle_form(*cs_, *cu_);
    const TrigField* mu = transfer();

    std::mt19937_64 rng(sc_.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<double, 2>> cone_points(sc_.cone_samples);
    for (auto& p : cone_points) p = {u(rng), u(rng)};

    bool tangent = true;
    json dirs = json::object();
    for (const FiberCorrection* c : {&*cs_, &*cu_}) {
      json d = {{"eigenvalue", c->eigenvalue},
                {"eigenvector", json::array({c->eigenvector[0], c->eigenvector[1]})},
                {"coefficients", c->correction.size()},
                {"truncation_bound", c->truncation_bound},
                {"pruned_mass", c->pruned_mass},
                {"rounding_allowance", c->rounding_allowance},
                {"error_bound", c->error_bound()},
                {"recurrence_residual", recurrence_residual(F, *c, 64)}};
      double cone = 0.0;
      for (const auto& p : cone_points) cone = std::max(cone, std::abs(cone_slope(F, c->direction, p) - c->correction(p)));
      d["cone_difference"] = cone;
      if (mu) {
        const TrigField oracle = mu->directional_derivative(c->eigenvector);
        double err = 0.0;
        const std::size_t n = sc_.splitting_grid;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            const std::array<double, 2> x{static_cast<double>(i) / static_cast<double>(n),
                                          static_cast<double>(j) / static_cast<double>(n)};
            err = std::max(err, std::abs(c->correction(x) - oracle(x)));
          }
        d["oracle_error"] = err;
        d["bound_exceeds_error"] = c->truncation_bound > err;
        tangent = tangent && err < sc_.tolerances.zero;
      }
      dirs[to_string(c->direction)] = d;
    }
    rec.verdict = mu ? (tangent ? "tangent" : "not-tangent") : "computed";
    rec.results = {{"order", sc_.order},
                   {"grid", sc_.splitting_grid},
                   {"cone_samples", sc_.cone_samples},
                   {"directions", dirs},
                   {"joint_form",
                    {{"ax", format_field(joint_->dx)}, {"ay", format_field(joint_->dy)}, {"vt", format_field(joint_->dt)}}}};

    const TrigField gs = F.gamma().directional_derivative(cs_->eigenvector);
    const TrigField gu = F.gamma().directional_derivative(cu_->eigenvector);
    auto& rows = report.plots["splitting"].rows;
    for_each_plot_xy(sc_.plot, [&](const std::array<double, 2>& x) {
      const TorusPoint p{x[0], x[1]};
      const TorusPoint fp = f_.apply(p);
      const double rs = std::abs(cs_->eigenvalue * cs_->correction(fp) - gs(p) - cs_->correction(p));
      const double ru = std::abs(cu_->eigenvalue * cu_->correction(fp) - gu(p) - cu_->correction(p));
      rows.push_back({x[0], x[1], 0.0, std::max(rs, ru)});
    });
  }

  void tangency(CheckRecord& rec, Report& report) {
    const TrigField* mu = transfer();
    if (!mu) {
      rec.verdict = "no-transfer";
      rec.results = {{"residual", nullptr}};
      report.plots["tangency"];
      return;
    }
    const double r = graph_tangency_check(*joint_, *mu, sc_.splitting_grid);
    rec.verdict = r < sc_.tolerances.tangency ? "tangent" : "not-tangent";
    rec.results = {{"grid", sc_.splitting_grid}, {"residual", r}, {"tolerance", sc_.tolerances.tangency}};
    const TrigField mx = mu->derivative(0), my = mu->derivative(1);
    auto& rows = report.plots["tangency"].rows;
    for_each_plot_xy(sc_.plot, [&](const std::array<double, 2>& x) {
      const double t = wrap_unit((*mu)(x));
      const Covector a = joint_->at({x[0], x[1], t});
      rows.push_back({x[0], x[1], t, std::max(std::abs(a[0] + a[2] * mx(x)), std::abs(a[1] + a[2] * my(x)))});
    });
  }

  void leaf(CheckRecord& rec, Report& report) {
    const SkewProduct& F = skew();
    const TrigField* mu = transfer();
    GraphLeaf leaf{0.0, mu ? *mu : TrigField(2)};
    double worst = 0.0, best = std::numeric_limits<double>::infinity();
    auto& rows = report.plots["leaf"].rows;
    for (std::size_t i = 0; i < sc_.thetas; ++i) {
      leaf.theta = static_cast<double>(i) / static_cast<double>(sc_.thetas);
      const double r = leaf_invariance_check(F, leaf, sc_.leaf_samples, sc_.seed + i);
      worst = std::max(worst, r);
      best = std::min(best, r);
      rows.push_back({0.0, 0.0, leaf.theta, r});
    }
    const double tol = sc_.tolerances.leaf;
    rec.verdict = worst < tol ? "invariant" : (best >= tol ? "not-invariant" : "mixed");
    rec.results = {{"candidate", mu ? "solver" : "zero"},
                   {"thetas", sc_.thetas},
                   {"samples", sc_.leaf_samples},
                   {"max_distance", worst},
                   {"min_distance", best},
                   {"tolerance", tol}};
  }

  void lemma41(CheckRecord& rec, Report& report) {
    const SkewProduct& F = skew();
    const OneForm& alpha = pipeline_form("lemma41");
    try {
      const Lemma41Report r = lemma41_check(F, alpha, sc_.grid);
      const double inv = pullback_invariance_residual(F, alpha, sc_.grid);
      const double tol = sc_.tolerances.identity;
      rec.verdict = r.residual < tol ? "holds" : "fails";
      rec.results = {{"form", sc_.form ? "form" : "dt-minus-dmu"},
                     {"residual", r.residual},
                     {"argmax", point_json(r.argmax)},
                     {"conformal",
                      {{"multiplier_min", r.conformal.multiplier_min},
                       {"multiplier_max", r.conformal.multiplier_max},
                       {"positive", r.conformal.positive},
                       {"residual", r.conformal.residual}}},
                     {"pullback_invariance_residual", inv},
                     {"tolerance", tol}};
      auto& rows = report.plots["lemma41"].rows;
      for_each_plot_point(sc_.plot, [&](const Point3& p) {
        rows.push_back({p[0], p[1], p[2], lemma41_residual(F, alpha, p)});
      });
    } catch (const TransversalityError& e) {
      rec.verdict = "fails";
      rec.results = {{"error", e.what()}};
      report.plots["lemma41"];
    }
  }

  void wedge_plot(Report& report, const std::string& check, const ThreeForm& w) {
    auto& rows = report.plots[check].rows;
    for_each_plot_point(sc_.plot, [&](const Point3& p) { rows.push_back({p[0], p[1], p[2], w.coef(p)}); });
  }

  void frobenius(CheckRecord& rec, Report& report) {
    const OneForm& alpha = tested_form();
    const Tolerances tol{sc_.tolerances.zero, sc_.tolerances.nonvanishing, sc_.tolerances.obstruction};
    const FrobeniusReport r = frobenius_test(alpha, sc_.grid, tol);
    rec.verdict = to_string(r.verdict);
    rec.results = {{"form", alpha_source(sc_)}, {"max_abs", r.max_abs}, {"argmax", point_json(r.argmax)}};
    wedge_plot(report, "frobenius", wedge(alpha, exterior_derivative(alpha)));
  }

  void contact(CheckRecord& rec, Report& report) {
    const OneForm& alpha = tested_form();
    const Tolerances tol{sc_.tolerances.zero, sc_.tolerances.nonvanishing, sc_.tolerances.obstruction};
    const ContactReport r = contact_test(alpha, sc_.grid, tol);
    rec.verdict = to_string(r.verdict);
    json samples = json::array();
    for (const auto& p : r.degenerate_samples) samples.push_back(point_json(p));
    rec.results = {{"form", alpha_source(sc_)},
                   {"min_abs", r.min_abs},
                   {"argmin", point_json(r.argmin)},
                   {"sign_change", r.sign_change},
                   {"degenerate_samples", samples}};
    wedge_plot(report, "contact", wedge(alpha, exterior_derivative(alpha)));
  }

  void reeb(CheckRecord& rec, Report& report) {
    const OneForm& alpha = tested_form();
    const TwoForm d = exterior_derivative(alpha);
    const Grid3 g = sc_.plot.size() > 0 ? sc_.plot : Grid3{4, 4, 4};
    double normalization = 0.0, kernel = 0.0;
    auto& rows = report.plots["reeb"].rows;
    try {
      for_each_plot_point(g, [&](const Point3& p) {
        const auto r = reeb_field(alpha, p);
        const Covector a = alpha.at(p);
        const Bivector b = d.at(p);
        const double n = std::abs(a[0] * r[0] + a[1] * r[1] + a[2] * r[2] - 1.0);
        // i_R d alpha as a covector on (dx, dy, dt).
        const std::array<double, 3> w{-b.xy * r[1] - b.xt * r[2], b.xy * r[0] - b.yt * r[2], b.xt * r[0] + b.yt * r[1]};
        const double k = std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
        normalization = std::max(normalization, n);
        kernel = std::max(kernel, k);
        if (sc_.plot.size() > 0) rows.push_back({p[0], p[1], p[2], std::max(n, k)});
      });
    } catch (const NotContactError& e) {
      rec.verdict = "not-contact";
      rec.results = {{"form", alpha_source(sc_)}, {"error", e.what()}};
      rows.clear();
      return;
    }
    const double tol = sc_.tolerances.zero;
    rec.verdict = normalization < tol && kernel < tol ? "verified" : "failed";
    rec.results = {{"form", alpha_source(sc_)},
                   {"samples", g.size()},
                   {"normalization_residual", normalization},
                   {"kernel_residual", kernel},
                   {"tolerance", tol}};
  }

  void charfol(CheckRecord& rec, Report& report) {
    const OneForm& alpha = pipeline_form("charfol");
    const SurfaceGraph surface{*sc_.surface};
    const PlanarVectorField x = characteristic_field(alpha, surface);
    const TrigField div = divergence(x);
    SingularPointOptions opt;
    opt.seeds = sc_.seeds;
    const auto records = singular_points(x, opt);
    const CharfolVerdict v = contact_verdict(records, x, sc_.tolerances.divergence);
    rec.verdict = to_string(v.kind);

    double max_div = 0.0, max_res = 0.0;
    json points = json::array();
    for (const auto& r : records) {
      max_div = std::max(max_div, std::abs(r.divergence));
      max_res = std::max(max_res, r.residual);
      points.push_back({{"location", json::array({r.location[0], r.location[1]})},
                        {"divergence", r.divergence},
                        {"type", to_string(r.type)}});
      report.singular_points.emplace_back(r.location[0], r.location[1], r.divergence, to_string(r.type));
    }
    json ham = nullptr;
    if (!sc_.form) ham = hamiltonian_form_check(x, *sc_.surface - *transfer());
    rec.results = {{"form", sc_.form ? "form" : "dt-minus-dmu"},
                   {"field", {{"x1", format_field(x.x1)}, {"x2", format_field(x.x2)}}},
                   {"divergence_is_zero", div.is_zero()},
                   {"divergence_l1", div.l1_norm()},
                   {"hamiltonian_residual", ham},
                   {"singular_point_count", records.size()},
                   {"max_abs_divergence_at_zeros", max_div},
                   {"max_newton_residual", max_res},
                   {"vacuous", v.vacuous},
                   {"violations", v.violations},
                   {"tolerance", sc_.tolerances.divergence},
                   {"singular_points", points}};
    auto& rows = report.plots["charfol"].rows;
    for_each_plot_xy(sc_.plot, [&](const std::array<double, 2>& p) { rows.push_back({p[0], p[1], 0.0, div(p)}); });
  }

  const Scenario& sc_;
  ToralAutomorphism f_;
  std::optional<TrigField> gamma_;
  std::optional<SkewProduct> F_;
  std::optional<CohomologySolution> solution_;
  std::optional<FiberCorrection> cs_, cu_;
  std::optional<OneForm> joint_;
  std::optional<OneForm> exact_form_;
};

std::string link_status(const Report& r, std::initializer_list<std::pair<const char*, const char*>> tests) {
  bool ran = false;
  for (const auto& [check, good] : tests) {
    const CheckRecord* c = r.find(check);
    if (!c) continue;
    ran = true;
    if (c->verdict != good) return "fails";
  }
  return ran ? "holds" : "not-run";
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kAsExpected: return "as-expected";
    case CheckStatus::kViolated: return "violated";
    case CheckStatus::kInconclusive: return "inconclusive";
    case CheckStatus::kUnchecked: return "unchecked";
  }
  return "?";
}

const CheckRecord* Report::find(std::string_view check) const {
  for (const auto& c : checks)
    if (c.name == check) return &c;
  return nullptr;
}

int Report::exit_code() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::kViolated) return 1;
    if (c.status == CheckStatus::kInconclusive) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

nlohmann::ordered_json Report::to_json() const {
  json chain;
  chain["coboundary"] = link_status(*this, {{"obstruction", "all-zero"}, {"solve", "solved"}});
  chain["invariant_foliation"] = link_status(*this, {{"leaf", "invariant"}, {"tangency", "tangent"}});
  // A user-supplied [form] replaces the pipeline's forms, so the last two links do not apply.
  chain["integrable_joint_bundle"] =
      scenario.form ? std::string("not-run") : link_status(*this, {{"frobenius", "integrable"}});
  chain["not_contact"] = scenario.form ? std::string("not-run")
                                       : link_status(*this, {{"contact", "not-contact"}, {"charfol", "not-contact"}});
  std::string summary = "complete";
  bool any_run = false;
  for (const auto& [link, status] : chain.items()) {
    if (status == "fails") {
      summary = "broken at " + link;
      break;
    }
    if (status == "not-run") summary = "partial";
    else any_run = true;
  }
  if (!any_run && summary == "partial") summary = "not-applicable";
  chain["summary"] = summary;

  json checks_json = json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"name", c.name},
                           {"verdict", c.verdict},
                           {"expected", c.expected ? json(*c.expected) : json(nullptr)},
                           {"status", to_string(c.status)},
                           {"results", c.results}});
  const std::string canon = scenario.canonical();
  const int code = exit_code();
  return {{"skewlab_version", version},
          {"scenario", scenario.name},
          {"inputs_hash", fnv1a64(canon)},
          {"seed", scenario.seed},
          {"overall", {{"status", code == 0 ? "as-expected" : code == 1 ? "violated" : "inconclusive"},
                       {"exit_code", code}}},
          {"chain", chain},
          {"checks", checks_json},
          {"scenario_canonical", canon}};
}

nlohmann::ordered_json Report::timing_json() const {
  json t = json::object();
  double total = 0.0;
  for (const auto& c : checks) {
    t[c.name] = c.seconds;
    total += c.seconds;
  }
  return {{"scenario", scenario.name}, {"total_seconds", total}, {"checks", t}};
}

void validate(const Scenario& sc) {
  const bool has_cocycle = sc.cocycle != CocycleKind::kNone;
  const bool planar = sc.matrix.size() == 2;
  for (const auto& c : sc.checks) {
    auto need = [&](bool ok, const std::string& what) {
      if (!ok) throw DependencyError("check '" + c + "' requires " + what);
    };
    if (c != "obstruction" && c != "frobenius" && c != "contact" && c != "reeb")
      need(planar, "a 2x2 base matrix");
    if (c == "obstruction" || c == "solve" || c == "splitting" || c == "leaf" || c == "tangency")
      need(has_cocycle, "a [cocycle] section");
    if (c == "tangency") need(sc.requests("splitting"), "check 'splitting'");
    if (c == "lemma41") need(has_cocycle, "a [cocycle] section");
    if (c == "lemma41" || c == "charfol") need(sc.form || has_cocycle, "a [form] section or a [cocycle] section");
    if (c == "charfol") need(sc.surface.has_value(), "a [surface] section");
    if (c == "frobenius" || c == "contact" || c == "reeb")
      need(sc.form || sc.requests("splitting"), "a [form] section or check 'splitting'");
  }
}

Report run_scenario(const Scenario& scenario) {
  validate(scenario);
  Report report;
  report.scenario = scenario;
  report.version = SKEWLAB_VERSION;
  Runner runner(report.scenario);
  for (const auto& c : report.scenario.checks) {
    CheckRecord rec = runner.run(c, report);
    if (auto it = scenario.expect.find(c); it != scenario.expect.end()) {
      rec.expected = it->second;
      rec.status = rec.verdict == it->second ? CheckStatus::kAsExpected : CheckStatus::kViolated;
    } else {
      rec.status = rec.verdict == "inconclusive" ? CheckStatus::kInconclusive : CheckStatus::kUnchecked;
    }
    report.checks.push_back(std::move(rec));
  }
  return report;
}

Report run_scenario(const std::filesystem::path& path, std::optional<std::uint64_t> seed) {
  Scenario sc = load_scenario(path);
  if (seed) sc.seed = *seed;
  return run_scenario(sc);
}

void emit_plotdata(const Report& report, std::string_view check, std::ostream& out) {
  if (!is_known_check(check)) throw std::invalid_argument("emit_plotdata: unknown check '" + std::string(check) + "'");
  if (!report.find(check))
    throw std::invalid_argument("emit_plotdata: check '" + std::string(check) + "' is not present in the report");
  out << "x,y,t,value\n";
  auto it = report.plots.find(std::string(check));
  if (it == report.plots.end()) return;
  char buf[160];
  for (const auto& r : it->second.rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r[0], r[1], r[2], r[3]);
    out << buf;
  }
}

std::filesystem::path emit_plotdata(const Report& report, std::string_view check, const std::filesystem::path& dir) {
  std::ostringstream ss;
  emit_plotdata(report, check, ss);
  std::filesystem::create_directories(dir);
  const auto path = dir / (std::string(check) + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << ss.str();
  return path;
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  };
  write("report.json", report.to_json().dump(2) + "\n");
  write("timing.json", report.timing_json().dump(2) + "\n");
  for (const auto& c : report.checks) emit_plotdata(report, c.name, dir);
  if (report.find("charfol")) {
    std::string csv = "x,y,divergence,classification\n";
    char buf[160];
    for (const auto& [x, y, d, type] : report.singular_points) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,", x, y, d);
      csv += buf + type + "\n";
    }
    write("charfol_singular_points.csv", csv);
  }
}

Scenario scenario_from_report(const std::filesystem::path& report_json) {
  std::ifstream in(report_json, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open report " + report_json.string());
  const json j = json::parse(in);
  if (!j.contains("scenario_canonical"))
    throw std::runtime_error(report_json.string() + " has no embedded scenario");
  return parse_scenario(j.at("scenario_canonical").get<std::string>(), report_json.string());
}

}  // namespace skewlab::lab
