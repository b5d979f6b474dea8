#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewlab/lab/scenario.hpp"

namespace skewlab::lab {

/// Rows of (x, y, t, value) for external plotting.
struct PlotGrid {
  std::vector<std::array<double, 4>> rows;
};

enum class CheckStatus { kAsExpected, kViolated, kInconclusive, kUnchecked };
const char* to_string(CheckStatus s);

struct CheckRecord {
  std::string name;
  std::string verdict;
  std::optional<std::string> expected;
  CheckStatus status = CheckStatus::kUnchecked;
  nlohmann::ordered_json results;
  double seconds = 0.0;
};

struct Report {
  Scenario scenario;
  std::string version;
  std::vector<CheckRecord> checks;
  std::map<std::string, PlotGrid> plots;
  /// Singular points of the characteristic field: x, y, divergence, type.
  std::vector<std::tuple<double, double, double, std::string>> singular_points;

  const CheckRecord* find(std::string_view check) const;
  /// 0 when every expectation holds, 1 if one is violated, 2 if a verdict is inconclusive.
  int exit_code() const;
  /// Deterministic JSON: no timings, no timestamps.
  nlohmann::ordered_json to_json() const;
  nlohmann::ordered_json timing_json() const;
};

/// Throws DependencyError if a requested check lacks its prerequisites.
void validate(const Scenario& scenario);

/// Runs the requested checks in dependency order.
Report run_scenario(const Scenario& scenario);
Report run_scenario(const std::filesystem::path& path, std::optional<std::uint64_t> seed = std::nullopt);

/// Writes report.json, timing.json, and one <check>.csv per check into dir.
void write_report(const Report& report, const std::filesystem::path& dir);

/// CSV with header `x,y,t,value`; an empty grid yields the header only.
/// Throws std::invalid_argument for unknown checks or checks absent from the report.
void emit_plotdata(const Report& report, std::string_view check, std::ostream& out);
std::filesystem::path emit_plotdata(const Report& report, std::string_view check, const std::filesystem::path& dir);

/// Scenario embedded in a report.json written by write_report.
Scenario scenario_from_report(const std::filesystem::path& report_json);

}  // namespace skewlab::lab
