#include "gapasym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapasym/errors.hpp"
#include "gapasym/parallel.hpp"

namespace gapasym {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

ConvergenceReport convergence_ladder(const ModelParams& params, const GapConfig& gap,
                                     const std::vector<int>& n_values,
                                     const LadderOptions& options) {
  if (n_values.empty()) throw DomainError("ladder needs at least one n");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw DomainError("ladder n values must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw DomainError("ladder n values must be strictly increasing");
    }
  }
  const auto coeffs = expansion_coefficients(params, gap, options.g_route);

  ConvergenceReport report;
  report.rows.resize(n_values.size());
  detail::parallel_for(n_values.size(), options.threads, [&](std::size_t i) {
    LadderRow& row = report.rows[i];
    row.n = n_values[i];
    try {
      row.exact = exact_log_gap_probability(params, row.n, gap, options.policy).log_pn;
      row.fluctuation = fluctuation(coeffs, row.n);
      row.predicted = predicted_log_gap_probability(coeffs, row.n, false) +
                      (options.include_fluctuation ? row.fluctuation : 0.0);
      row.residual = row.exact - row.predicted;
      if (!std::isfinite(row.residual)) throw ConvergenceError("non-finite residual");
      row.excluded = std::abs(row.residual) < kResidualFloor;
    } catch (const std::exception& e) {
      row.exact = row.predicted = row.residual = row.fluctuation = kNaN;
      row.error = e.what();
    }
  });
  report.summary = summarize(report.rows);
  return report;
}

LadderSummary summarize(const std::vector<LadderRow>& rows) {
  LadderSummary s;
  std::vector<double> abs_res;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : rows) {
    if (row.error) {
      ++s.failed_rows;
      continue;
    }
    const double a = std::abs(row.residual);
    abs_res.push_back(a);
    s.max_abs_residual = std::max(s.max_abs_residual, a);
    if (!row.excluded && a >= kResidualFloor) {
      xs.push_back(std::log(static_cast<double>(row.n)));
      ys.push_back(std::log(a));
    }
  }
  const std::size_t half = abs_res.size() / 2;
  s.median_early = median({abs_res.begin(), abs_res.begin() + static_cast<std::ptrdiff_t>(half)});
  s.median_late = median({abs_res.end() - static_cast<std::ptrdiff_t>(half), abs_res.end()});

  if (xs.size() < 2) {
    s.fitted_slope = s.fitted_slope_stderr = kNaN;
    s.slope_flagged = true;
    return s;
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  s.fitted_slope = sxy / sxx;
  if (xs.size() > 2) {
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - (my + s.fitted_slope * (xs[i] - mx));
      sse += e * e;
    }
    s.fitted_slope_stderr = std::sqrt(sse / (m - 2.0) / sxx);
  } else {
    s.fitted_slope_stderr = kNaN;
  }
  return s;
}

FluctuationTrace fluctuation_trace(const ExpansionCoefficients& coeffs,
                                   const std::vector<int>& n_values) {
  if (n_values.empty()) throw DomainError("trace needs at least one n");
  FluctuationTrace trace;
  trace.min = std::numeric_limits<double>::infinity();
  trace.max = -std::numeric_limits<double>::infinity();
  for (int n : n_values) {
    const double v = fluctuation(coeffs, n);
    trace.points.push_back({n, v});
    trace.min = std::min(trace.min, v);
    trace.max = std::max(trace.max, v);
  }
  return trace;
}

}  // namespace gapasym
