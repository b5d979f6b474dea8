#pragma once

namespace skewlab {

/// Thresholds for the three-valued verdicts. A quantity below `zero` counts as
/// vanishing, one above `nonvanishing` as bounded away from zero; anything in
/// between is reported as inconclusive.
struct Tolerances {
  double zero = 1e-10;
  double nonvanishing = 1e-6;
  double obstruction = 1e-10;
};

}  // namespace skewlab
