#pragma once

#include <cstdint>
#include <vector>

#include "gapasym/model.hpp"
#include "gapasym/specfun.hpp"

namespace gapasym {

// ---------------------------------------------------------------------------
// Integrals of log erfc that enter C4 and C6.

struct ErfcIntegralSet {
  /// int_{-inf}^0 log(erfc(y)/2) dy
  double i_minus = 0.0;
  /// int_0^inf [log(erfc(y)/2) + y^2 + log y + log(2 sqrt(pi))] dy
  double i_plus = 0.0;
  /// int_{-inf}^0 {2y log(erfc(y)/2) + e^{-y^2}(1 - 5y^2) / (3 sqrt(pi) erfc(y))} dy
  double j_minus = 0.0;
  /// The same integrand on (0, inf) plus 11/3 y^3 + 2y log y + (1/2 + 2 log(2 sqrt(pi))) y.
  double j_plus = 0.0;
  /// Largest disagreement between the two quadrature routes plus their own estimates.
  double est_abs_err = 0.0;
};

enum class IntegralRoute {
  /// Adaptive Gauss-Kronrod on [0, 12] with a 1/y tail series beyond.
  kGaussKronrod,
  /// Tanh-sinh on [0, 16] with the same tail series beyond.
  kTanhSinh,
};

/// Integrands as written above; the y > 0 ones are evaluated through
/// sqrt(pi) y erfcx(y) to avoid the cancellation of y^2 against log erfc.
double i_minus_integrand(double y);
double i_plus_integrand(double y);
double j_minus_integrand(double y);
double j_plus_integrand(double y);

/// One route only; est_abs_err is that route's own error estimate.
ErfcIntegralSet erfc_integral_constants(IntegralRoute route, const PrecisionPolicy& policy = {});

/// Both routes, checked against each other. The default-policy result is
/// computed once and cached. Throws ConvergenceError if the routes disagree
/// by more than 1e-10.
ErfcIntegralSet erfc_integral_constants(const PrecisionPolicy& policy = {});

// ---------------------------------------------------------------------------
// The constant G(b, alpha) of the disk cases.

enum class GRoute { kLimit, kClosedForm, kAuto };

inline constexpr int kGLimitBaseN = 50000;

/// Bracketed Stirling-corrected sum at N, in extended precision.
long double g_const_bracket(double b, double alpha, std::int64_t n);

/// Richardson extrapolation 2 B(2 n0) - B(n0) of the bracket.
double g_const_limit(double b, double alpha, std::int64_t n0 = kGLimitBaseN);

/// Barnes G expression, valid for b = n1 / n2.
double g_const_closed_form(std::int64_t n1, std::int64_t n2, double alpha);

/// kAuto picks the closed form when params carries b as a rational.
/// Results are cached per (b, alpha, route). Throws MissingRational when
/// kClosedForm is requested without a rational b.
double g_const(const ModelParams& params, GRoute route = GRoute::kAuto);

// ---------------------------------------------------------------------------
// Expansion log P_n ~ C1 n^2 + C2 n log n + C3 n + C4 sqrt(n) + C5 log n + C6 + F_n.

/// One oscillating annulus: contributes log theta(t2k n + offset | i tau_im).
struct ThetaTerm {
  double t2k = 0.0;
  double offset = 0.0;
  double tau_im = 0.0;
};

struct ExpansionCoefficients {
  CaseTag case_tag = CaseTag::kBulk;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
  double c6 = 0.0;
  std::vector<ThetaTerm> theta_terms;
};

/// Validates the gap with classify() and fills every constant for its case.
ExpansionCoefficients expansion_coefficients(const ModelParams& params, const GapConfig& gap,
                                             GRoute g_route = GRoute::kAuto);

/// F_n for real n; each theta argument is reduced mod 1 before evaluation.
double fluctuation(const ExpansionCoefficients& coeffs, double n);

double predicted_log_gap_probability(const ExpansionCoefficients& coeffs, double n,
                                     bool include_fluctuation = true);

// ---------------------------------------------------------------------------
// Theta(x; rho, a) = x(x-1) log rho + x log a + sum_{j>=0} log(1 + a rho^{2(j+x)})
//                    + sum_{j>=0} log(1 + rho^{2(j+1-x)} / a).

/// Direct summation of both series.
double theta_capital_series(double x, double rho, double a);

/// Closed form through log theta(x + log(a rho)/(2 log rho) | pi i / log(1/rho)).
double theta_capital_jacobi(double x, double rho, double a);

}  // namespace gapasym
