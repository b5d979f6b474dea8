#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "skewlab/forms.hpp"
#include "skewlab/int_matrix.hpp"
#include "skewlab/trig_field.hpp"

namespace skewlab::lab {

/// Syntax or schema error in a scenario file; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A requested check whose prerequisites are missing from the scenario.
class DependencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Names accepted in `checks = ...`, in execution order.
const std::vector<std::string>& known_checks();
bool is_known_check(std::string_view name);

struct LabTolerances {
  double zero = 1e-10;
  double nonvanishing = 1e-6;
  double obstruction = 1e-10;
  /// Pointwise identities (pullback invariance, invariance of beta/v).
  double identity = 1e-11;
  double tangency = 1e-9;
  double leaf = 1e-12;
  /// Divergence at singular points of the characteristic field.
  double divergence = 1e-8;
};

enum class CocycleKind { kNone, kTransfer, kGamma };

struct Scenario {
  std::string name;
  /// Requested checks, sorted into execution order.
  std::vector<std::string> checks;
  std::uint64_t seed = 1;

  IntMatrix matrix{{2, 1}, {1, 1}};
  CocycleKind cocycle = CocycleKind::kNone;
  /// The transfer map mu or the cocycle gamma, depending on `cocycle`.
  TrigField cocycle_field{2};

  unsigned order = 50;
  std::size_t splitting_grid = 256;
  std::size_t cone_samples = 100;

  unsigned max_period = 8;
  unsigned max_block = 3;

  std::size_t thetas = 64;
  std::size_t leaf_samples = 10000;

  Grid3 grid;
  /// Resolution of the CSV grids written next to the report.
  Grid3 plot{32, 32, 8};
  std::size_t seeds = 64;

  LabTolerances tolerances;
  std::optional<TrigField> surface;
  std::optional<OneForm> form;
  std::map<std::string, std::string> expect;

  bool requests(std::string_view check) const;

  /// Normalized scenario text: fixed section and key order, shortest round-trip
  /// numbers, comments dropped. Parsing it yields an equal scenario.
  std::string canonical() const;
};

Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Field literal: `[(k, cos, sin), ...]`, e.g. `[((1,0), 0, 0.1)]`.
TrigField parse_field(std::string_view text, std::size_t dim);
std::string format_field(const TrigField& f);

/// 64-bit FNV-1a of the bytes, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);

}  // namespace skewlab::lab
