#include "gapasym/asym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gapasym/errors.hpp"

namespace gapasym {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Contribution of one bulk annulus [lo, hi] to C1, C2, C3, C6, plus its theta term.
struct AnnulusPart {
  double c1, c2, c3, c6;
  ThetaTerm theta;
};

AnnulusPart annulus_part(double lo, double hi, const ModelParams& params) {
  const double b = params.b();
  const double alpha = params.alpha();
  const double lo2b = std::pow(lo, 2.0 * b);
  const double hi2b = std::pow(hi, 2.0 * b);
  const double span = hi2b - lo2b;
  const double log_ratio = std::log(hi / lo);
  const double t = t2k(lo, hi, params);
  const double below = t - b * lo2b;  // t - b r_{2k-1}^{2b}
  const double above = b * hi2b - t;  // b r_{2k}^{2b} - t
  const double log_skew = std::log(above / below);

  AnnulusPart part{};
  part.c1 = span * span / (4.0 * log_ratio) - b / 4.0 * (hi2b * hi2b - lo2b * lo2b);
  part.c2 = -b * span / 2.0;
  part.c3 = b * span * (0.5 + std::log(b / std::sqrt(2.0 * kPi))) +
            b * b * (hi2b * std::log(hi) - lo2b * std::log(lo)) - below * std::log(below) -
            above * std::log(above);
  part.c6 = 0.5 * std::log(kPi) + (1.0 - 2.0 * b * b) / 12.0 * log_ratio + b * b * hi2b / above +
            b * b * lo2b / below - 0.5 * std::log(log_ratio) +
            log_skew * log_skew / (4.0 * log_ratio) - log_q_pochhammer_sum(lo / hi);
  part.theta = {t, 0.5 - alpha + log_skew / (2.0 * log_ratio), kPi / log_ratio};
  return part;
}

}  // namespace

ExpansionCoefficients expansion_coefficients(const ModelParams& params, const GapConfig& gap,
                                             GRoute g_route) {
  ExpansionCoefficients out;
  out.case_tag = classify(gap, params);
  const double b = params.b();
  const double alpha = params.alpha();
  const auto r = gap.radii();
  const int g = gap.g();
  const bool disk = gap.has_disk();
  const bool unbounded = gap.is_unbounded();

  // Bulk annuli k = first..last (1-based), radii r_{2k-1}, r_{2k}.
  const int first = disk ? 2 : 1;
  const int last = unbounded ? g - 1 : g;
  for (int k = first; k <= last; ++k) {
    const auto part = annulus_part(r[2 * k - 2], r[2 * k - 1], params);
    out.c1 += part.c1;
    out.c2 += part.c2;
    out.c3 += part.c3;
    out.c6 += part.c6;
    out.theta_terms.push_back(part.theta);
  }

  const auto integrals = erfc_integral_constants();
  double radii_sum = 0.0;
  for (double x : r) {
    if (x != 0.0 && !std::isinf(x)) radii_sum += std::pow(x, b);
  }
  out.c4 = std::sqrt(2.0) * b * (integrals.i_minus + integrals.i_plus) * radii_sum;
  const double j_total = integrals.j_minus + integrals.j_plus;
  const double log_2pi = std::log(2.0 * kPi);

  if (unbounded) {
    const double r1 = r[2 * g - 2];  // r_{2g-1}
    const double r2b = std::pow(r1, 2.0 * b);
    const double inner = 1.0 - b * r2b;
    out.c1 += b * r2b * r2b / 4.0 - r2b + std::log(b * r2b) / (2.0 * b) + 3.0 / (4.0 * b);
    out.c2 += b * r2b / 2.0 - 0.5;
    out.c3 += -r2b * (alpha + (b + 1.0) / 2.0 +
                      b * std::log(b * std::pow(r1, b) / std::sqrt(2.0 * kPi))) -
              inner * std::log(inner) + (1.0 + 2.0 * alpha) / (2.0 * b) * std::log(b * r2b) +
              (b + 2.0 * alpha + 1.0) / (2.0 * b) + 0.5 * std::log(b / (2.0 * kPi));
    // Pieces of C6 shared by the two unbounded theorems.
    out.c6 += -(1.0 + 2.0 * alpha) / 2.0 * std::log(inner) + b * b * r2b / inner + b;
  }
  if (disk) {
    const double r2 = r[1];
    const double r2b = std::pow(r2, 2.0 * b);
    out.c1 += -b * r2b * r2b / 4.0;
    out.c2 += -b * r2b / 2.0;
    out.c3 += r2b * (alpha + 0.5 + b / 2.0 * (1.0 - 2.0 * std::log(std::pow(r2, b) * std::sqrt(2.0 * kPi))));
  }

  switch (out.case_tag) {
    case CaseTag::kBulk:
      out.c5 = 0.0;
      break;
    case CaseTag::kUnbounded: {
      const double r1 = r[2 * g - 2];
      out.c5 = -(1.0 + 2.0 * alpha) / 4.0;
      out.c6 += -(2.0 * alpha + 1.0) / 4.0 * log_2pi +
                (b * b + 6.0 * b * alpha + 6.0 * alpha * alpha + 6.0 * alpha + 3.0 * b + 1.0) /
                    (12.0 * b) * std::log(b) +
                (b * b + 6.0 * alpha * alpha + 6.0 * alpha + 1.0) / 6.0 * std::log(r1) +
                2.0 * b * j_total;
      break;
    }
    case CaseTag::kDisk: {
      const double r2 = r[1];
      out.c5 = -(1.0 - 6.0 * b + b * b + 6.0 * alpha + 6.0 * alpha * alpha - 12.0 * alpha * b) /
               (12.0 * b);
      out.c6 += (2.0 * alpha + 1.0) / 4.0 * log_2pi +
                (b + 2.0 * alpha * b - alpha - alpha * alpha - (1.0 + b * b) / 6.0) * std::log(r2) -
                (b * b - 6.0 * b * alpha + 6.0 * alpha * alpha + 6.0 * alpha - 3.0 * b + 1.0) /
                    (12.0 * b) * std::log(b) -
                g_const(params, g_route) - 2.0 * b * j_total;
      break;
    }
    case CaseTag::kDiskUnbounded: {
      const double r1 = r[2 * g - 2];
      const double r2 = r[1];
      out.c5 = -(1.0 - 3.0 * b + b * b + 6.0 * alpha + 6.0 * alpha * alpha - 6.0 * alpha * b) /
               (12.0 * b);
      out.c6 += (1.0 + 2.0 * alpha) / 2.0 * std::log(b * std::pow(r2, 2.0 * b)) +
                (b * b + 6.0 * alpha * alpha + 6.0 * alpha + 1.0) / 6.0 * std::log(r1 / r2) -
                g_const(params, g_route);
      break;
    }
  }
  return out;
}

double fluctuation(const ExpansionCoefficients& coeffs, double n) {
  if (!(n >= 1.0)) throw DomainError("fluctuation needs n >= 1");
  double total = 0.0;
  for (const auto& term : coeffs.theta_terms) {
    // Fractional part of t2k n + offset, keeping the rounding error of the product.
    const double product = term.t2k * n;
    const double product_err = std::fma(term.t2k, n, -product);
    double z = (product - std::floor(product)) + (term.offset - std::floor(term.offset)) + product_err;
    z -= std::floor(z);
    total += log_jacobi_theta(z, term.tau_im);
  }
  return total;
}

double predicted_log_gap_probability(const ExpansionCoefficients& coeffs, double n,
                                     bool include_fluctuation) {
  if (!(n >= 1.0)) throw DomainError("prediction needs n >= 1");
  const double value = coeffs.c1 * n * n + coeffs.c2 * n * std::log(n) + coeffs.c3 * n +
                       coeffs.c4 * std::sqrt(n) + coeffs.c5 * std::log(n) + coeffs.c6;
  return include_fluctuation ? value + fluctuation(coeffs, n) : value;
}

namespace {

void check_theta_capital(double x, double rho, double a) {
  if (!std::isfinite(x) || !(rho > 0.0 && rho < 1.0) || !(a > 0.0) || std::isinf(a)) {
    throw DomainError("Theta(x; rho, a) needs finite x, 0 < rho < 1, a > 0");
  }
}

// sum_{j>=0} log(1 + c rho^{2(j+s)}) with log_c = log c.
double log_one_plus_series(double log_c, double log_rho, double s) {
  double sum = 0.0;
  for (int j = 0;; ++j) {
    const double exponent = log_c + 2.0 * (j + s) * log_rho;
    const double term = exponent > 0.0 ? exponent + std::log1p(std::exp(-exponent))
                                       : std::log1p(std::exp(exponent));
    sum += term;
    if (j + s > 0.0 && term <= kEps * std::max(1.0, std::abs(sum)) * 1e-2) break;
    if (j > 100000) throw ConvergenceError("Theta series did not converge");
  }
  return sum;
}

}  // namespace

double theta_capital_series(double x, double rho, double a) {
  check_theta_capital(x, rho, a);
  const double log_rho = std::log(rho);
  const double log_a = std::log(a);
  return x * (x - 1.0) * log_rho + x * log_a + log_one_plus_series(log_a, log_rho, x) +
         log_one_plus_series(-log_a, log_rho, 1.0 - x);
}

double theta_capital_jacobi(double x, double rho, double a) {
  check_theta_capital(x, rho, a);
  const double log_inv_rho = -std::log(rho);
  const double log_a = std::log(a);
  const double shift = std::log(a * rho) / (-2.0 * log_inv_rho);
  double z = x + shift;
  z -= std::floor(z);
  return 0.5 * (std::log(kPi) + log_a + 0.5 * log_inv_rho - std::log(log_inv_rho)) +
         log_a * log_a / (4.0 * log_inv_rho) - log_q_pochhammer_sum(rho) +
         log_jacobi_theta(z, kPi / log_inv_rho);
}

}  // namespace gapasym
