#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gapasym/asym.hpp"
#include "gapasym/exact.hpp"
#include "gapasym/model.hpp"

namespace gapasym {

struct LadderRow {
  int n = 0;
  double exact = 0.0;
  double predicted = 0.0;
  double residual = 0.0;  // exact - predicted
  double fluctuation = 0.0;
  /// |residual| below kResidualFloor; left out of the slope fit.
  bool excluded = false;
  /// Set when this row failed; the numeric fields are then NaN.
  std::optional<std::string> error;
};

struct LadderSummary {
  double max_abs_residual = 0.0;
  /// Median |residual| over the first and the last half of the rows.
  double median_early = 0.0;
  double median_late = 0.0;
  /// Least-squares slope of log|residual| against log n, with its standard
  /// error. NaN when fewer than two rows qualify.
  double fitted_slope = 0.0;
  double fitted_slope_stderr = 0.0;
  /// The fit had fewer than two usable rows.
  bool slope_flagged = false;
  int failed_rows = 0;
};

struct ConvergenceReport {
  std::vector<LadderRow> rows;
  LadderSummary summary;
};

inline constexpr double kResidualFloor = 1e-12;

struct LadderOptions {
  bool include_fluctuation = true;
  unsigned threads = 1;
  GRoute g_route = GRoute::kAuto;
  PrecisionPolicy policy;
};

/// Exact and predicted log P_n for each n (ascending, each >= 1). Rows are
/// computed independently; a failing row is marked instead of aborting.
ConvergenceReport convergence_ladder(const ModelParams& params, const GapConfig& gap,
                                     const std::vector<int>& n_values,
                                     const LadderOptions& options = {});

/// Summary statistics of an already filled ladder (rows sorted by n).
LadderSummary summarize(const std::vector<LadderRow>& rows);

struct FluctuationPoint {
  int n = 0;
  double value = 0.0;
};

struct FluctuationTrace {
  std::vector<FluctuationPoint> points;
  double min = 0.0;
  double max = 0.0;
};

FluctuationTrace fluctuation_trace(const ExpansionCoefficients& coeffs,
                                   const std::vector<int>& n_values);

}  // namespace gapasym
