#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/lab/runner.hpp"

namespace fs = std::filesystem;
using namespace skewlab::lab;

namespace {

constexpr int kInputError = 3;

int cmd_run(const std::string& path, const std::string& out_dir, std::optional<std::uint64_t> seed, bool quiet) {
  const Report report = run_scenario(fs::path(path), seed);
  const fs::path dir = out_dir.empty() ? fs::path("skewlab-out") / report.scenario.name : fs::path(out_dir);
  write_report(report, dir);
  if (!quiet) {
    for (const auto& c : report.checks) {
      std::cout << c.name << ": " << c.verdict;
      if (c.expected) std::cout << " (expected " << *c.expected << ", " << to_string(c.status) << ")";
      std::cout << "\n";
    }
    std::cout << "chain: " << report.to_json()["chain"]["summary"].get<std::string>() << "\n";
    std::cout << "report: " << (dir / "report.json").string() << "\n";
  }
  return report.exit_code();
}

int cmd_plot(const std::string& report_path, const std::string& check, const std::string& out_dir) {
  if (!is_known_check(check)) throw std::invalid_argument("unknown check '" + check + "'");
  const Scenario sc = scenario_from_report(report_path);
  if (!sc.requests(check)) throw std::invalid_argument("check '" + check + "' is not present in the report");
  const Report report = run_scenario(sc);
  const fs::path dir = out_dir.empty() ? fs::path(report_path).parent_path() : fs::path(out_dir);
  std::cout << emit_plotdata(report, check, dir).string() << "\n";
  return 0;
}

int cmd_list(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".scenario") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const Scenario sc = load_scenario(f);
    std::cout << sc.name << "\t" << f.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewlab: skew-products over hyperbolic toral automorphisms"};
  app.require_subcommand(1);

  std::string scenario, out_dir, report_path, check, list_dir = SKEWLAB_SCENARIO_DIR;
  std::optional<std::uint64_t> seed;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run a scenario and write report.json, timing.json and CSV grids");
  run->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default skewlab-out/<name>)");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_flag("-q,--quiet", quiet, "Print nothing on success");

  auto* plot = app.add_subcommand("plot", "Write the (x,y,t,value) CSV grid of one check");
  plot->add_option("report", report_path, "report.json written by 'run'")->required()->check(CLI::ExistingFile);
  plot->add_option("check", check, "Check name")->required();
  plot->add_option("--out", out_dir, "Output directory (default: next to the report)");

  auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");
  list->add_option("--dir", list_dir, "Scenario directory")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(scenario, out_dir, seed, quiet);
    if (*plot) return cmd_plot(report_path, check, out_dir);
    if (*list) return cmd_list(list_dir);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const DependencyError& e) {
    std::cerr << "dependency error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return 0;
}
