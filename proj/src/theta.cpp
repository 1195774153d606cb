#include <cmath>
#include <numbers>
#include <string>

#include "gapasym/errors.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTruncation = 1e-18;

void check_tau(double tau_im) {
  if (!(tau_im > 0.0) || std::isinf(tau_im)) {
    throw DomainError("theta requires a finite tau_im > 0, got " + std::to_string(tau_im));
  }
}

double reduce_unit(double z) { return z - std::floor(z); }

// 2 sum_{l>=1} q^{l^2} cos(2 pi l z) with z already in [0, 1).
double q_series_tail(double z, double tau_im) {
  double sum = 0.0;
  for (int l = 1;; ++l) {
    const double weight = std::exp(-kPi * tau_im * l * l);
    if (weight < kTruncation) break;
    const double phase = reduce_unit(l * z);
    sum += weight * std::cos(2.0 * kPi * phase);
  }
  return 2.0 * sum;
}

// log sum_l exp(-pi (l - z)^2 / tau_im), z in [0, 1), via log-sum-exp
// around the dominant term.
double log_transformed_sum(double z, double tau_im) {
  const double nearest = std::round(z);
  const double top = -kPi * (nearest - z) * (nearest - z) / tau_im;
  double sum = 1.0;
  for (int k = 1;; ++k) {
    const double up = nearest + k - z;
    const double down = nearest - k - z;
    const double t_up = std::exp(-kPi * up * up / tau_im - top);
    const double t_down = std::exp(-kPi * down * down / tau_im - top);
    sum += t_up + t_down;
    if (t_up < kTruncation * sum && t_down < kTruncation * sum) break;
  }
  return top + std::log(sum);
}

}  // namespace

namespace detail {

double theta_q_series(double z, double tau_im) {
  check_tau(tau_im);
  return 1.0 + q_series_tail(reduce_unit(z), tau_im);
}

double theta_transformed_series(double z, double tau_im) {
  check_tau(tau_im);
  return std::exp(-0.5 * std::log(tau_im) + log_transformed_sum(reduce_unit(z), tau_im));
}

double theta_triple_product(double z, double tau_im) {
  check_tau(tau_im);
  const double q = std::exp(-kPi * tau_im);
  const double c = std::cos(2.0 * kPi * reduce_unit(z));
  double log_product = 0.0;
  double q_odd = q;  // q^{2m-1}
  for (int m = 1; q_odd > kTruncation; ++m) {
    const double q_even = q_odd * q;  // q^{2m}
    log_product += std::log1p(-q_even) + std::log1p(2.0 * q_odd * c + q_odd * q_odd);
    q_odd *= q * q;
  }
  return std::exp(log_product);
}

}  // namespace detail

double log_jacobi_theta(double z, double tau_im) {
  check_tau(tau_im);
  const double x = reduce_unit(z);
  if (tau_im >= kThetaTransformThreshold) {
    // q <= e^{-pi}, so the tail is bounded by 2q/(1-q) < 0.1 in magnitude.
    const double tail = q_series_tail(x, tau_im);
    if (!(1.0 + tail > 0.0)) {
      throw ThetaNonpositive("theta(" + std::to_string(z) + " | i" + std::to_string(tau_im) +
                             ") is not positive");
    }
    return std::log1p(tail);
  }
  return -0.5 * std::log(tau_im) + log_transformed_sum(x, tau_im);
}

double jacobi_theta(double z, double tau_im) {
  check_tau(tau_im);
  if (tau_im >= kThetaTransformThreshold) return detail::theta_q_series(z, tau_im);
  return detail::theta_transformed_series(z, tau_im);
}

std::complex<double> jacobi_theta(std::complex<double> z, double tau_im) {
  check_tau(tau_im);
  // |term l| = exp(-pi t l^2 - 2 pi l Im z); sum until it is below 1e-18
  // on both sides of the peak.
  const double y = std::abs(z.imag());
  const double reach =
      (2.0 * kPi * y + std::sqrt(4.0 * kPi * kPi * y * y + 4.0 * kPi * tau_im * 42.0)) /
      (2.0 * kPi * tau_im);
  const int l_max = static_cast<int>(std::ceil(reach)) + 1;
  const std::complex<double> two_pi_i_z = std::complex<double>(0.0, 2.0 * kPi) * z;
  std::complex<double> sum = 1.0;
  for (int l = 1; l <= l_max; ++l) {
    const double gauss = -kPi * tau_im * l * l;
    sum += std::exp(gauss + two_pi_i_z * static_cast<double>(l));
    sum += std::exp(gauss - two_pi_i_z * static_cast<double>(l));
  }
  return sum;
}

}  // namespace gapasym
