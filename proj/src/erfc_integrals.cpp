#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gapasym/asym.hpp"
#include "gapasym/errors.hpp"
#include "gapasym/quadrature.hpp"

namespace gapasym {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kDualRouteTolerance = 1e-10;
constexpr double kCutoverY = 3.0;

// Asymptotic coefficients in u = 1/y of the y > 0 integrands:
// i_plus ~ sum c_k u^k (even k), j_plus ~ sum c_k u^k (odd k).
struct TailTerm {
  int power;
  double coeff;
};
constexpr std::array<TailTerm, 6> kIPlusTail = {{{2, -1.0 / 2.0},
                                                 {4, 5.0 / 8.0},
                                                 {6, -37.0 / 24.0},
                                                 {8, 353.0 / 64.0},
                                                 {10, -4081.0 / 160.0},
                                                 {12, 55205.0 / 384.0}}};
constexpr std::array<TailTerm, 6> kJPlusTail = {{{3, -1.0},
                                                 {5, 121.0 / 24.0},
                                                 {7, -873.0 / 32.0},
                                                 {9, 27023.0 / 160.0},
                                                 {11, -114491.0 / 96.0},
                                                 {13, 8514861.0 / 896.0}}};

template <std::size_t N>
double tail_integral(const std::array<TailTerm, N>& series, double cutoff) {
  double sum = 0.0;
  for (const auto& term : series) {
    sum += term.coeff / ((term.power - 1) * std::pow(cutoff, term.power - 1));
  }
  return sum;
}

struct RouteSetup {
  double cutoff;
  double tol;
};

template <class F>
QuadratureResult integrate(IntegralRoute route, F f, double lo, double hi, double tol) {
  if (route == IntegralRoute::kGaussKronrod) return integrate_gauss_kronrod(f, lo, hi, tol);
  return integrate_tanh_sinh(f, lo, hi, tol);
}

bool same_policy(const PrecisionPolicy& a, const PrecisionPolicy& b) {
  return a.target_rel == b.target_rel && a.target_abs == b.target_abs &&
         a.max_terms == b.max_terms && a.quadrature_nodes == b.quadrature_nodes;
}

ErfcIntegralSet compute_both(const PrecisionPolicy& policy) {
  const auto gk = erfc_integral_constants(IntegralRoute::kGaussKronrod, policy);
  const auto ts = erfc_integral_constants(IntegralRoute::kTanhSinh, policy);
  const double gap = std::max({std::abs(gk.i_minus - ts.i_minus), std::abs(gk.i_plus - ts.i_plus),
                               std::abs(gk.j_minus - ts.j_minus), std::abs(gk.j_plus - ts.j_plus)});
  if (!(gap <= kDualRouteTolerance)) {
    throw ConvergenceError("erfc integral routes disagree by " + std::to_string(gap));
  }
  ErfcIntegralSet out = gk;
  out.est_abs_err = gap + std::max(gk.est_abs_err, ts.est_abs_err);
  return out;
}

}  // namespace

double i_minus_integrand(double y) { return log_half_erfc(y); }

double i_plus_integrand(double y) {
  if (y < kCutoverY) {
    // log(sqrt(pi) y erfcx(y)) equals the bracket identically.
    return std::log(kSqrtPi * y * erfcx(y));
  }
  return std::log1p(scaled_erfc_tail_minus_one(y));
}

double j_minus_integrand(double y) {
  const double e = std::erfc(y);
  return 2.0 * y * std::log(0.5 * e) + std::exp(-y * y) * (1.0 - 5.0 * y * y) / (3.0 * kSqrtPi * e);
}

double j_plus_integrand(double y) {
  // With s = sqrt(pi) y erfcx(y) the integrand is
  //   2y log s + y/2 + (y + 5 y^3 (s - 1)) / (3 s).
  if (y == 0.0) return 1.0 / (3.0 * kSqrtPi);
  double s;
  double log_s;
  double s_minus_one;
  if (y < kCutoverY) {
    s = kSqrtPi * y * erfcx(y);
    log_s = std::log(s);
    s_minus_one = s - 1.0;
  } else {
    s_minus_one = scaled_erfc_tail_minus_one(y);
    s = 1.0 + s_minus_one;
    log_s = std::log1p(s_minus_one);
  }
  return 2.0 * y * log_s + 0.5 * y + (y + 5.0 * y * y * y * s_minus_one) / (3.0 * s);
}

ErfcIntegralSet erfc_integral_constants(IntegralRoute route, const PrecisionPolicy& policy) {
  policy.validate();
  const RouteSetup setup = route == IntegralRoute::kGaussKronrod
                               ? RouteSetup{12.0, std::min(policy.target_abs, 1e-13)}
                               : RouteSetup{16.0, std::min(policy.target_abs, 1e-13)};
  const double t = setup.cutoff;
  const auto im = integrate(route, i_minus_integrand, -t, 0.0, setup.tol);
  const auto ip = integrate(route, i_plus_integrand, 0.0, t, setup.tol);
  const auto jm = integrate(route, j_minus_integrand, -t, 0.0, setup.tol);
  const auto jp = integrate(route, j_plus_integrand, 0.0, t, setup.tol);
  for (const auto* r : {&im, &ip, &jm, &jp}) {
    if (!r->converged) throw ConvergenceError("erfc integral quadrature did not converge");
  }
  ErfcIntegralSet out;
  out.i_minus = im.value;
  out.i_plus = ip.value + tail_integral(kIPlusTail, t);
  out.j_minus = jm.value;
  out.j_plus = jp.value + tail_integral(kJPlusTail, t);
  out.est_abs_err = std::max({im.abs_err, ip.abs_err, jm.abs_err, jp.abs_err});
  return out;
}

ErfcIntegralSet erfc_integral_constants(const PrecisionPolicy& policy) {
  static const ErfcIntegralSet cached = compute_both(PrecisionPolicy{});
  if (same_policy(policy, PrecisionPolicy{})) return cached;
  return compute_both(policy);
}

}  // namespace gapasym
