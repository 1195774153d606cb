#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "gapasym/errors.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {
namespace {

// zeta(k) - 1 for k = 2, 3, ..., 33.
constexpr std::array<double, 32> kZetaMinusOne = {
    6.44934066848226406e-01, 2.02056903159594292e-01, 8.23232337111381857e-02,
    3.69277551433699266e-02, 1.73430619844491402e-02, 8.34927738192282713e-03,
    4.07735619794433960e-03, 2.00839282608221426e-03, 9.94575127818085256e-04,
    4.94188604119464529e-04, 2.46086553308048320e-04, 1.22713347578489145e-04,
    6.12481350587048277e-05, 3.05882363070204933e-05, 1.52822594086518710e-05,
    7.63719763789976257e-06, 3.81729326499984022e-06, 1.90821271655393897e-06,
    9.53962033872796212e-07, 4.76932986787806447e-07, 2.38450502727733004e-07,
    1.19219925965311064e-07, 5.96081890512594801e-08, 2.98035035146522793e-08,
    1.49015548283650427e-08, 7.45071178983543006e-09, 3.72533402478845728e-09,
    1.86265972351304914e-09, 9.31327432419668166e-10, 4.65662906503378366e-10,
    2.32831183367650534e-10, 1.16415501727005193e-10,
};

// Bernoulli numbers B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,          1.0 / 42.0,  -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,      7.0 / 6.0,   -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,
};

constexpr double kStirlingMinX = 10.0;
constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

// sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k for |z| <= 1/2.
double zeta_tail_series(double z) {
  double sum = 0.0;
  double power = z;
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    power *= -z;
    const double k = static_cast<double>(i + 2);
    sum += kZetaMinusOne[i] * power / k;
  }
  // power already carries the (-1)^k sign up to one flip.
  return -sum;
}

// log Gamma(2 + z) for |z| <= 1/2. The log(1 + z) terms of log Gamma(1 + z)
// and of the shift cancel analytically.
double log_gamma_near_two(double z) {
  return z * (1.0 - std::numbers::egamma) + zeta_tail_series(z);
}

double log_gamma_near_one(double z) { return log_gamma_near_two(z) - std::log1p(z); }

}  // namespace

double stirling_remainder(double x) {
  if (!(x > 0.0)) throw DomainError("stirling_remainder requires x > 0");
  double shift = 0.0;
  while (x < kStirlingMinX) {
    // mu(x) = mu(x + 1) + (x + 1/2) log(1 + 1/x) - 1.
    shift += (x + 0.5) * std::log1p(1.0 / x) - 1.0;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv_sq = inv * inv;
  double power = inv;
  double sum = 0.0;
  for (std::size_t k = 1; k <= 9; ++k) {
    const double kk = static_cast<double>(k);
    sum += kBernoulli[k - 1] / (2.0 * kk * (2.0 * kk - 1.0)) * power;
    power *= inv_sq;
  }
  return sum + shift;
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  if (x >= 15.0) {
    return (x - 0.5) * std::log(x) - x + kLogSqrtTwoPi + stirling_remainder(x);
  }
  if (x < 0.5) {
    // x + 1 lies in [1, 1.5).
    return log_gamma_near_one(x) - std::log(x);
  }
  if (x <= 1.5) return log_gamma_near_one(x - 1.0);
  if (x <= 2.5) return log_gamma_near_two(x - 2.0);
  double product = 1.0;
  while (x > 2.5) {
    x -= 1.0;
    product *= x;
  }
  return std::log(product) + log_gamma_near_two(x - 2.0);
}

}  // namespace gapasym
