#include <cmath>
#include <limits>
#include <numbers>

#include "gapasym/errors.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kContinuedFractionMinY = 3.0;
constexpr double kAsymptoticSeriesMinY = 10.0;

// Tail K(y) of the continued fraction
//   sqrt(pi) erfcx(y) = 1 / (y + K),  K = (1/2) / (y + 1 / (y + (3/2) / (y + ...))),
// evaluated with the modified Lentz algorithm. Converges for y > 0; used for y >= 3.
double erfc_fraction_tail(double y) {
  constexpr double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k < 10000; ++k) {
    const double a = 0.5 * k;
    d = y + a * d;
    if (d == 0.0) d = tiny;
    c = y + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) return f;
  }
  throw ConvergenceError("erfc continued fraction did not converge");
}

}  // namespace

double erfc(double y) { return std::erfc(y); }

double erfcx(double y) {
  if (!(y >= 0.0)) throw DomainError("erfcx is implemented for y >= 0");
  if (y < kContinuedFractionMinY) return std::exp(y * y) * std::erfc(y);
  return 1.0 / (kSqrtPi * (y + erfc_fraction_tail(y)));
}

double scaled_erfc_tail_minus_one(double y) {
  if (!(y >= 0.0)) throw DomainError("scaled_erfc_tail_minus_one requires y >= 0");
  if (y < kContinuedFractionMinY) return kSqrtPi * y * std::exp(y * y) * std::erfc(y) - 1.0;
  if (std::isinf(y)) return 0.0;
  const double k = erfc_fraction_tail(y);
  return -k / (y + k);
}

double log_half_erfc(double y) {
  if (std::isnan(y)) return y;
  if (y < 0.0) return std::log1p(-0.5 * std::erfc(-y));
  if (y < kAsymptoticSeriesMinY) return std::log(0.5 * std::erfc(y));
  // erfc(y) = e^{-y^2} / (sqrt(pi) y) * sum_k (-1)^k (2k-1)!! / (2y^2)^k,
  // truncated before the terms start to grow.
  const double inv_two_y_sq = 0.5 / (y * y);
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = -term * (2.0 * k - 1.0) * inv_two_y_sq;
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < kEps * sum) break;
  }
  return -y * y - std::log(y) - std::log(2.0 * kSqrtPi) + std::log(sum);
}

}  // namespace gapasym
