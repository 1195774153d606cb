#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "gapasym/asym.hpp"
#include "gapasym/errors.hpp"

namespace gapasym {
namespace {

// lgammal writes the global signgam, so every caller holds this lock.
std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::tuple<double, double, int>, double>& cache() {
  static std::map<std::tuple<double, double, int>, double> values;
  return values;
}

long double stirling_part(long double b, long double alpha, long double n) {
  const long double log_n = std::log(n);
  const long double log_b = std::log(b);
  const long double log_2pi = std::log(2.0L * std::numbers::pi_v<long double>);
  return n * n / (2 * b) * log_n - (3 + 2 * log_b) / (4 * b) * n * n +
         (1 + 2 * alpha - b) / (2 * b) * n * log_n +
         (log_2pi / 2 + (b - 2 * alpha - 1) / (2 * b) * (1 + log_b)) * n +
         (1 - 3 * b + b * b + 6 * alpha - 6 * b * alpha + 6 * alpha * alpha) / (12 * b) * log_n;
}

void check_params(double b, double alpha) {
  if (!(b > 0.0) || !(alpha > -1.0) || std::isinf(b) || std::isinf(alpha)) {
    throw DomainError("G(b, alpha) requires b > 0 and alpha > -1");
  }
}

// Sum of lgammal((j + alpha)/b) for j in [from, to], compensated.
void accumulate_log_gamma(long double b, long double alpha, std::int64_t from, std::int64_t to,
                          long double& sum, long double& carry) {
  for (std::int64_t j = from; j <= to; ++j) {
    const long double y = std::lgamma((static_cast<long double>(j) + alpha) / b) - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
}

double limit_unlocked(double b, double alpha, std::int64_t n0) {
  long double sum = 0.0L;
  long double carry = 0.0L;
  accumulate_log_gamma(b, alpha, 1, n0, sum, carry);
  const long double coarse = sum - stirling_part(b, alpha, static_cast<long double>(n0));
  accumulate_log_gamma(b, alpha, n0 + 1, 2 * n0, sum, carry);
  const long double fine = sum - stirling_part(b, alpha, static_cast<long double>(2 * n0));
  return static_cast<double>(2.0L * fine - coarse);
}

}  // namespace

long double g_const_bracket(double b, double alpha, std::int64_t n) {
  check_params(b, alpha);
  if (n < 1) throw DomainError("bracket needs N >= 1");
  std::lock_guard lock(cache_mutex());
  long double sum = 0.0L;
  long double carry = 0.0L;
  accumulate_log_gamma(b, alpha, 1, n, sum, carry);
  return sum - stirling_part(b, alpha, static_cast<long double>(n));
}

double g_const_limit(double b, double alpha, std::int64_t n0) {
  check_params(b, alpha);
  if (n0 < 1) throw DomainError("Richardson base N must be >= 1");
  std::lock_guard lock(cache_mutex());
  return limit_unlocked(b, alpha, n0);
}

double g_const_closed_form(std::int64_t n1, std::int64_t n2, double alpha) {
  if (n1 < 1 || n2 < 1) throw DomainError("b = n1/n2 needs positive integers");
  const double b = static_cast<double>(n1) / static_cast<double>(n2);
  check_params(b, alpha);
  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);
  double value = d1 * d2 * zeta_prime_minus_one() +
                 (b * (d2 - d1) + 2.0 * d1 * alpha) / (4.0 * b) * std::log(2.0 * std::numbers::pi) -
                 (1.0 - 3.0 * b + b * b + 6.0 * alpha - 6.0 * b * alpha + 6.0 * alpha * alpha) /
                     (12.0 * b) * std::log(d1);
  for (std::int64_t j = 1; j <= n2; ++j) {
    for (std::int64_t k = 1; k <= n1; ++k) {
      value -= log_barnes_g((static_cast<double>(j) + alpha / b - 1.0) / d2 +
                            static_cast<double>(k) / d1);
    }
  }
  return value;
}

double g_const(const ModelParams& params, GRoute route) {
  const auto& rational = params.b_rational();
  if (route == GRoute::kClosedForm && !rational) {
    throw MissingRational("closed form of G(b, alpha) needs b given as n1/n2");
  }
  if (route == GRoute::kAuto) route = rational ? GRoute::kClosedForm : GRoute::kLimit;
  const auto key = std::make_tuple(params.b(), params.alpha(), static_cast<int>(route));
  std::lock_guard lock(cache_mutex());
  auto& values = cache();
  if (auto it = values.find(key); it != values.end()) return it->second;
  const double value = route == GRoute::kClosedForm
                           ? g_const_closed_form(rational->num, rational->den, params.alpha())
                           : limit_unlocked(params.b(), params.alpha(), kGLimitBaseN);
  values.emplace(key, value);
  return value;
}

}  // namespace gapasym
