#include "gapasym/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gapasym/errors.hpp"
#include "gapasym/parallel.hpp"
#include "gapasym/quadrature.hpp"

namespace gapasym {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative accuracy assumed for a single log P or log Q value.
constexpr double kInputRelErr = 1e-14;
constexpr int kMaxQuadratureNodes = 1024;

struct Interval {
  double lo;
  double hi;
};

// Gauss-Legendre estimate of log int_lo^hi t^{a-1} e^{-t} / Gamma(a) dt,
// accumulated with log-sum-exp over the nodes.
double log_quadrature(double a, double lo, double hi, int nodes) {
  const auto& rule = gauss_legendre(nodes);
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::vector<double> logs(rule.nodes.size());
  double top = -kInf;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double t = center + half * rule.nodes[i];
    logs[i] = log_gamma_prefactor(a, t) - std::log(t) + std::log(rule.weights[i]);
    top = std::max(top, logs[i]);
  }
  if (top == -kInf) return -kInf;
  double sum = 0.0;
  for (double v : logs) sum += std::exp(v - top);
  return top + std::log(sum) + std::log(half);
}

IntervalMass quadrature_mass(IntervalMass mass, const PrecisionPolicy& policy) {
  if (std::isinf(mass.x_hi)) {
    throw DomainError("quadrature route needs a finite interval");
  }
  mass.route = MassRoute::kQuadrature;
  int nodes = std::max(1, policy.quadrature_nodes);
  double previous = log_quadrature(mass.a, mass.x_lo, mass.x_hi, nodes);
  double change = kInf;
  while (nodes < kMaxQuadratureNodes) {
    nodes = std::min(2 * nodes, kMaxQuadratureNodes);
    const double current = log_quadrature(mass.a, mass.x_lo, mass.x_hi, nodes);
    change = std::abs(current - previous);
    previous = current;
    if (change <= policy.target_rel) break;
  }
  mass.log_mass = previous;
  mass.est_rel_err = std::max(change, kInputRelErr);
  return mass;
}

// log(1 - r) and its relative error bound, given inputs with kInputRelErr.
void cancellation(double log_big, double log_small, double& log_mass, double& rel_err) {
  const double r = std::exp(log_small - log_big);
  log_mass = log_big + std::log1p(-r);
  rel_err = r < 1.0 ? kInputRelErr * (1.0 + r) / (1.0 - r) : kInf;
}

void check_radii(std::span<const double> radii) {
  if (radii.empty() || radii.size() % 2 != 0) {
    throw ValidationError("radii list must be non-empty with an even number of entries");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (std::isnan(radii[i]) || radii[i] < 0.0) {
      throw ValidationError("radii must be nonnegative numbers");
    }
    if (std::isinf(radii[i]) && i + 1 != radii.size()) {
      throw ValidationError("only the last radius may be infinite");
    }
    if (i > 0 && radii[i] < radii[i - 1]) {
      throw UnsortedRadii("radii must be given in increasing order");
    }
  }
}

// Kept intervals in the t = n u^{2b} variable. Intervals separated by a
// zero-width hole are merged; empty kept intervals are dropped.
std::vector<Interval> kept_intervals(const ModelParams& params, int n,
                                     std::span<const double> radii) {
  std::vector<double> edges;
  edges.reserve(radii.size() + 2);
  edges.push_back(0.0);
  for (double r : radii) {
    edges.push_back(std::isinf(r) ? kInf : n * std::pow(r, 2.0 * params.b()));
  }
  edges.push_back(kInf);
  std::vector<Interval> kept;
  for (std::size_t l = 0; l + 1 < edges.size(); l += 2) {
    const Interval next{edges[l], edges[l + 1]};
    if (!(next.hi > next.lo)) continue;
    if (!kept.empty() && kept.back().hi == next.lo) {
      kept.back().hi = next.hi;
    } else {
      kept.push_back(next);
    }
  }
  return kept;
}

struct JTerm {
  double log_mass = 0.0;
  RouteCounts routes;
  int flagged = 0;
};

}  // namespace

IntervalMass kept_interval_log_mass(double a, double x_lo, double x_hi,
                                    const PrecisionPolicy& policy, std::optional<MassRoute> force) {
  if (!(a > 0.0) || std::isinf(a)) throw DomainError("interval mass requires finite a > 0");
  if (!(x_lo >= 0.0) || !(x_hi > x_lo)) {
    throw DomainError("interval mass requires 0 <= x_lo < x_hi");
  }
  IntervalMass mass;
  mass.a = a;
  mass.x_lo = x_lo;
  mass.x_hi = x_hi;
  if (force == MassRoute::kQuadrature) return quadrature_mass(mass, policy);

  MassRoute route;
  if (force) {
    route = *force;
  } else if (x_hi <= a) {
    route = MassRoute::kPDiff;
  } else if (x_lo >= a) {
    route = MassRoute::kQDiff;
  } else {
    route = MassRoute::kPDiff;  // straddles the mode
  }
  mass.route = route;

  const auto upper = incomplete_gamma(a, x_hi, policy);
  const auto lower = incomplete_gamma(a, x_lo, policy);
  if (force || x_hi <= a || x_lo >= a) {
    if (route == MassRoute::kPDiff) {
      cancellation(upper.log_p, lower.log_p, mass.log_mass, mass.est_rel_err);
    } else {
      cancellation(lower.log_q, upper.log_q, mass.log_mass, mass.est_rel_err);
    }
  } else {
    // 1 - P(lo) - Q(hi); both pieces are at most ~1/2 + O(a^{-1/2}).
    const double outside = std::exp(lower.log_p) + std::exp(upper.log_q);
    mass.log_mass = std::log1p(-outside);
    mass.est_rel_err = outside < 1.0 ? kInputRelErr * (1.0 + outside / (1.0 - outside)) : kInf;
  }
  if (!force && !(mass.est_rel_err <= policy.target_rel)) return quadrature_mass(mass, policy);
  return mass;
}

ExactResult exact_log_gap_probability(const ModelParams& params, int n,
                                      std::span<const double> radii,
                                      const PrecisionPolicy& policy,
                                      const ExactOptions& options) {
  if (n < 1) throw DomainError("n must be at least 1");
  policy.validate();
  check_radii(radii);
  const auto kept = kept_intervals(params, n, radii);

  std::vector<JTerm> terms(static_cast<std::size_t>(n));
  detail::parallel_for(terms.size(), options.threads, [&](std::size_t idx) {
    const int j = static_cast<int>(idx) + 1;
    const double a = (j + params.alpha()) / params.b();
    JTerm& term = terms[idx];
    double top = -kInf;
    std::vector<double> logs;
    logs.reserve(kept.size());
    try {
      for (const auto& iv : kept) {
        const auto mass = kept_interval_log_mass(a, iv.lo, iv.hi, policy);
        switch (mass.route) {
          case MassRoute::kPDiff:
            ++term.routes.p_diff;
            break;
          case MassRoute::kQDiff:
            ++term.routes.q_diff;
            break;
          case MassRoute::kQuadrature:
            ++term.routes.quadrature;
            break;
        }
        if (!(mass.est_rel_err <= policy.target_rel)) ++term.flagged;
        logs.push_back(mass.log_mass);
        top = std::max(top, mass.log_mass);
      }
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(std::string(e.what()) + " (term j = " + std::to_string(j) + ")");
    }
    if (top == -kInf) {
      term.log_mass = -kInf;
      return;
    }
    double sum = 0.0;
    for (double v : logs) sum += std::exp(v - top);
    term.log_mass = std::min(0.0, top + std::log(sum));
  });

  ExactResult result;
  result.n = n;
  result.policy = policy;
  // Kahan summation in ascending j: identical for any thread count.
  double sum = 0.0;
  double carry = 0.0;
  for (const auto& term : terms) {
    const double y = term.log_mass - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    result.routes_used.p_diff += term.routes.p_diff;
    result.routes_used.q_diff += term.routes.q_diff;
    result.routes_used.quadrature += term.routes.quadrature;
    result.flagged_masses += term.flagged;
    if (options.keep_terms) result.per_j_terms.push_back(term.log_mass);
  }
  if (std::isnan(sum)) sum = -kInf;  // -inf terms poison the compensation
  result.log_pn = sum;
  return result;
}

ExactResult exact_log_gap_probability(const ModelParams& params, int n, const GapConfig& gap,
                                      const PrecisionPolicy& policy,
                                      const ExactOptions& options) {
  return exact_log_gap_probability(params, n, gap.radii(), policy, options);
}

double exact_log_partition(const ModelParams& params, int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  const double b = params.b();
  const double alpha = params.alpha();
  const double nn = n;
  const double log_n = std::log(nn);
  double sum = -(nn * nn / (2.0 * b)) * log_n - (1.0 + 2.0 * alpha) / (2.0 * b) * nn * log_n +
               nn * std::log(std::numbers::pi / b);
  double carry = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double y = log_gamma((j + alpha) / b) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace gapasym
