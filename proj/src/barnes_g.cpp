#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gapasym/errors.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {
namespace {

constexpr double kZetaPrimeMinusOne = -0.16542114370045092921391966024278;

// Asymptotic expansion is used for x >= kBarnesMinX; below, shift upward.
constexpr double kBarnesMinX = 16.0;

// B_4, B_6, ..., B_14 for the six correction terms B_{2k+2} / (4k(k+1) z^{2k}).
constexpr std::array<double, 6> kBernoulliShifted = {
    -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
};

// log G(z + 1) for z >= 15.
double log_barnes_g_asymptotic(double z) {
  const double log_z = std::log(z);
  double value = 0.5 * z * z * log_z - 0.75 * z * z +
                 0.5 * z * std::log(2.0 * std::numbers::pi) - log_z / 12.0 +
                 kZetaPrimeMinusOne;
  const double inv_sq = 1.0 / (z * z);
  double power = inv_sq;
  for (std::size_t i = 0; i < kBernoulliShifted.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    value += kBernoulliShifted[i] / (4.0 * k * (k + 1.0)) * power;
    power *= inv_sq;
  }
  return value;
}

}  // namespace

double zeta_prime_minus_one() noexcept { return kZetaPrimeMinusOne; }

double log_barnes_g(double x) {
  if (!(x > 0.0) || std::isinf(x)) {
    throw DomainError("log_barnes_g requires finite x > 0, got " + std::to_string(x));
  }
  if (x >= kBarnesMinX) return log_barnes_g_asymptotic(x - 1.0);
  if (x == std::floor(x)) {
    // G(n) = prod_{k=1}^{n-2} k!, so log G(n) = sum_{k=2}^{n-2} (n - 1 - k) log k.
    const int n = static_cast<int>(x);
    double value = 0.0;
    for (int k = 2; k <= n - 2; ++k) value += (n - 1 - k) * std::log(static_cast<double>(k));
    return value;
  }
  // G(x + 1) = Gamma(x) G(x).
  const int shift = static_cast<int>(std::ceil(kBarnesMinX - x));
  double gamma_sum = 0.0;
  for (int i = 0; i < shift; ++i) gamma_sum += log_gamma(x + i);
  return log_barnes_g_asymptotic(x + shift - 1.0) - gamma_sum;
}

double log_q_pochhammer_sum(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw DomainError("log_q_pochhammer_sum requires 0 < rho < 1, got " + std::to_string(rho));
  }
  const double ratio = rho * rho;
  const double tail_scale = 1.0 / (1.0 - ratio);
  double power = 1.0;
  double sum = 0.0;
  for (int j = 1; j < 10'000'000; ++j) {
    power *= ratio;
    sum += std::log1p(-power);
    if (power * tail_scale < std::numeric_limits<double>::epsilon() * std::max(1.0, -sum)) break;
  }
  return sum;
}

}  // namespace gapasym
