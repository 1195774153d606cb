#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapasym/model.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {

enum class MassRoute { kPDiff, kQDiff, kQuadrature };

/// log of P(a, x_hi) - P(a, x_lo), the Gamma(a) probability of [x_lo, x_hi].
struct IntervalMass {
  double a = 0.0;
  double x_lo = 0.0;
  double x_hi = 0.0;
  double log_mass = 0.0;
  MassRoute route = MassRoute::kPDiff;
  double est_rel_err = 0.0;
};

/// Picks the difference with the least cancellation: P(hi) - P(lo) below the
/// mode, Q(lo) - Q(hi) above it, 1 - P(lo) - Q(hi) when straddling. Falls back
/// to Gauss-Legendre quadrature in log space when the estimated relative error
/// of the difference exceeds policy.target_rel. `force` pins a route (tests).
IntervalMass kept_interval_log_mass(double a, double x_lo, double x_hi,
                                    const PrecisionPolicy& policy = {},
                                    std::optional<MassRoute> force = std::nullopt);

struct RouteCounts {
  int p_diff = 0;
  int q_diff = 0;
  int quadrature = 0;
};

struct ExactResult {
  double log_pn = 0.0;
  /// Per-j log of the kept mass, j = 1..n; filled when ExactOptions::keep_terms.
  std::vector<double> per_j_terms;
  int n = 0;
  RouteCounts routes_used;
  PrecisionPolicy policy;
  /// Masses whose est_rel_err exceeded policy.target_rel.
  int flagged_masses = 0;
};

struct ExactOptions {
  bool keep_terms = false;
  /// Worker count for the per-j terms. The result does not depend on it.
  unsigned threads = 1;
};

/// log P_n = sum_{j=1}^{n} log sum_{kept l} mass((j + alpha)/b; n r_{2l}^{2b}, n r_{2l+1}^{2b}),
/// with r_0 = 0 and r_{2g+1} = inf, reduced with Kahan summation in ascending j.
ExactResult exact_log_gap_probability(const ModelParams& params, int n, const GapConfig& gap,
                                      const PrecisionPolicy& policy = {},
                                      const ExactOptions& options = {});

/// Same on a raw radii list. Equal neighbours are allowed and denote an empty
/// (zero-width) hole; the list must otherwise be sorted, nonnegative, even.
ExactResult exact_log_gap_probability(const ModelParams& params, int n,
                                      std::span<const double> radii,
                                      const PrecisionPolicy& policy = {},
                                      const ExactOptions& options = {});

/// log Z_n of the ensemble.
double exact_log_partition(const ModelParams& params, int n);

/// Moduli |z_1|, ..., |z_n| of one configuration: u_j = (t_j / n)^{1/(2b)} with
/// t_j ~ Gamma((j + 1 + alpha)/b, 1) independent, j = 0..n-1.
std::vector<double> kostlan_sample_radii(const ModelParams& params, int n, std::uint64_t seed);

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
  std::int64_t samples = 0;
  /// No sampled configuration avoided the hole.
  bool insufficient_samples = false;
  /// P_n < kMcMinProbability: the exact value is returned instead of sampling.
  bool analytic = false;
};

inline constexpr double kMcMinProbability = 1e-4;
inline constexpr std::int64_t kMcChunkSize = 1 << 16;

/// Fraction of sampled radii configurations with no modulus in the hole.
/// The budget is split into chunks of kMcChunkSize with seeds derived from
/// (seed, chunk index), so the result does not depend on `threads`.
McEstimate mc_gap_probability(const ModelParams& params, int n, std::span<const double> radii,
                              std::int64_t samples, std::uint64_t seed, unsigned threads = 1);
McEstimate mc_gap_probability(const ModelParams& params, int n, const GapConfig& gap,
                              std::int64_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace gapasym
