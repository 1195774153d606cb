#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gapasym/errors.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrefactorStirlingMinA = 10.0;
constexpr double kTemmeTaylorRadius = 0.1;

// Taylor coefficients of c0 and c1 in d = lambda - 1.
constexpr std::array<double, 14> kC0Taylor = {
    -1.0 / 3.0, 1.0 / 12.0, -23.0 / 540.0, 353.0 / 12960.0, -589.0 / 30240.0,
    81083.0 / 5443200.0, -7783.0 / 653184.0, 514303.0 / 52254720.0,
    -646245559.0 / 77598259200.0, 46803332951.0 / 6518253772800.0,
    -532524715193.0 / 84737299046400.0, 169861927409147.0 / 30505427656704000.0,
    -456157941704137.0 / 91516282970112000.0, 549175347221821.0 / 122021710626816000.0};
constexpr std::array<double, 12> kC1Taylor = {
    -1.0 / 540.0, -1.0 / 288.0, 23.0 / 6048.0, -3733.0 / 1088640.0, 3253.0 / 1088640.0,
    -135719.0 / 52254720.0, 176215213.0 / 77598259200.0, -4349006363.0 / 2172751257600.0,
    21534686191.0 / 12105328435200.0, -6943967599169.0 / 4357918236672000.0,
    232007590921.0 / 161404379136000.0, -1083316689677.0 / 830079664128000.0};

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// lambda - 1 - log(lambda) written in terms of d = lambda - 1.
double lambda_minus_one_minus_log(double d) {
  if (std::abs(d) < 0.1) {
    // sum_{k>=2} (-1)^k d^k / k
    double sum = 0.0;
    double power = -d;
    for (int k = 2; k < 40; ++k) {
      power *= -d;
      const double term = power / k;
      sum += term;
      if (std::abs(term) < kEps * std::abs(sum)) break;
    }
    return sum;
  }
  return d - std::log1p(d);
}

void check_args(double a, double z) {
  if (!(a > 0.0) || std::isinf(a)) {
    throw DomainError("incomplete gamma requires finite a > 0, got a = " + std::to_string(a));
  }
  if (!(z >= 0.0)) {
    throw DomainError("incomplete gamma requires z >= 0, got z = " + std::to_string(z));
  }
}

// log(1 - exp(x)) for x <= 0.
double log1m_exp(double x) {
  if (x > -std::numbers::ln2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

double log_p_series(double a, double z, const PrecisionPolicy& policy, int& terms) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k <= policy.max_terms; ++k) {
    term *= z / (a + k);
    sum += term;
    if (term < kEps * sum) {
      terms = k;
      return log_gamma_prefactor(a, z) - std::log(a) + std::log(sum);
    }
  }
  throw ConvergenceError("incomplete gamma series exceeded max_terms at a = " +
                         std::to_string(a) + ", z = " + std::to_string(z));
}

// Legendre continued fraction for Q, modified Lentz.
double log_q_fraction(double a, double z, const PrecisionPolicy& policy, int& terms) {
  constexpr double tiny = 1e-300;
  double b = z + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= policy.max_terms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      terms = i;
      return log_gamma_prefactor(a, z) + std::log(h);
    }
  }
  throw ConvergenceError("incomplete gamma continued fraction exceeded max_terms at a = " +
                         std::to_string(a) + ", z = " + std::to_string(z));
}

}  // namespace

void PrecisionPolicy::validate() const {
  if (!(target_rel > 0.0) || !(target_abs > 0.0)) {
    throw DomainError("precision targets must be positive");
  }
  if (max_terms < 1 || quadrature_nodes < 1) {
    throw DomainError("max_terms and quadrature_nodes must be at least 1");
  }
}

TemmeFrame TemmeFrame::make(double a, double z) {
  check_args(a, z);
  TemmeFrame frame;
  frame.a = a;
  frame.lambda = z / a;
  if (z == 0.0) {
    frame.lambda_minus_one = -1.0;
    frame.eta = -kInf;
    frame.half_a_eta_sq = kInf;
    return frame;
  }
  const double d = (z - a) / a;
  frame.lambda_minus_one = d;
  const double h = lambda_minus_one_minus_log(d);
  frame.eta = std::copysign(std::sqrt(2.0 * h), d);
  if (d == 0.0) frame.eta = 0.0;
  frame.half_a_eta_sq = a * h;
  return frame;
}

double log_gamma_prefactor(double a, double z) {
  check_args(a, z);
  if (z == 0.0) return -kInf;
  if (std::isinf(z)) return -kInf;
  if (a < kPrefactorStirlingMinA) return a * std::log(z) - z - log_gamma(a);
  // a log z - z - log Gamma(a) = -a (lambda - 1 - log lambda) + log(a / 2pi) / 2 - mu(a)
  const double h = lambda_minus_one_minus_log((z - a) / a);
  return -a * h + 0.5 * std::log(a / (2.0 * std::numbers::pi)) - stirling_remainder(a);
}

IncompleteGamma incomplete_gamma(double a, double z, const PrecisionPolicy& policy) {
  check_args(a, z);
  IncompleteGamma out;
  if (z == 0.0) {
    out.log_p = -kInf;
    out.log_q = 0.0;
    return out;
  }
  if (std::isinf(z)) {
    out.log_p = 0.0;
    out.log_q = -kInf;
    out.route = GammaRoute::kContinuedFraction;
    return out;
  }
  if (z < a + 1.0) {
    out.route = GammaRoute::kSeries;
    out.log_p = log_p_series(a, z, policy, out.terms);
    out.log_q = log1m_exp(out.log_p);
  } else {
    out.route = GammaRoute::kContinuedFraction;
    out.log_q = log_q_fraction(a, z, policy, out.terms);
    out.log_p = log1m_exp(out.log_q);
  }
  return out;
}

double reg_gamma_p(double a, double z, const PrecisionPolicy& policy) {
  return std::exp(incomplete_gamma(a, z, policy).log_p);
}

double reg_gamma_q(double a, double z, const PrecisionPolicy& policy) {
  return std::exp(incomplete_gamma(a, z, policy).log_q);
}

double log_reg_gamma_p(double a, double z, const PrecisionPolicy& policy) {
  return incomplete_gamma(a, z, policy).log_p;
}

double log_reg_gamma_q(double a, double z, const PrecisionPolicy& policy) {
  return incomplete_gamma(a, z, policy).log_q;
}

double temme_c0(const TemmeFrame& frame) {
  const double d = frame.lambda_minus_one;
  if (std::abs(d) < kTemmeTaylorRadius) return horner(kC0Taylor, d);
  return 1.0 / d - 1.0 / frame.eta;
}

double temme_c1(const TemmeFrame& frame) {
  const double d = frame.lambda_minus_one;
  if (std::abs(d) < kTemmeTaylorRadius) return horner(kC1Taylor, d);
  const double eta = frame.eta;
  return 1.0 / (eta * eta * eta) - 1.0 / (d * d * d) - 1.0 / (d * d) - 1.0 / (12.0 * d);
}

namespace {

double temme_correction(const TemmeFrame& frame, int order) {
  if (frame.a < kTemmeMinA) {
    throw DomainError("Temme expansion requires a >= 10, got a = " + std::to_string(frame.a));
  }
  if (order < 0 || order > 1) {
    throw DomainError("Temme expansion is implemented for order 0 and 1");
  }
  if (!(frame.lambda > 0.0)) throw DomainError("Temme expansion requires lambda > 0");
  double correction = temme_c0(frame);
  if (order == 1) correction += temme_c1(frame) / frame.a;
  return std::exp(-frame.half_a_eta_sq) / std::sqrt(2.0 * std::numbers::pi * frame.a) * correction;
}

}  // namespace

double reg_gamma_p_temme(const TemmeFrame& frame, int order) {
  const double correction = temme_correction(frame, order);
  return 0.5 * std::erfc(-frame.eta * std::sqrt(0.5 * frame.a)) - correction;
}

double reg_gamma_q_temme(const TemmeFrame& frame, int order) {
  const double correction = temme_correction(frame, order);
  return 0.5 * std::erfc(frame.eta * std::sqrt(0.5 * frame.a)) + correction;
}

double paris_error_bound(double a, double z) {
  const double w = (z - a) / std::sqrt(z);
  return 3.0 / (w * w * w * w);
}

double log_reg_gamma_q_paris(double a, double z) {
  check_args(a, z);
  if (!(z >= kParisMinZ) || !((z - a) / std::sqrt(z) >= kParisMinSeparation)) {
    throw DomainError("Paris expansion requires z >= 100 and (z - a)/sqrt(z) >= 10");
  }
  const double gap = z - a;
  const double bracket = 1.0 / gap - z / (gap * gap * gap);
  return log_gamma_prefactor(a, z) + std::log(bracket);
}

double reg_gamma_q_paris(double a, double z) { return std::exp(log_reg_gamma_q_paris(a, z)); }

}  // namespace gapasym
