#pragma once

#include <complex>

namespace gapasym {

/// Accuracy knobs shared by the iterative algorithms.
struct PrecisionPolicy {
  double target_rel = 1e-12;
  double target_abs = 1e-13;
  int max_terms = 100000;
  int quadrature_nodes = 64;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Gamma function family.

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Binet remainder log Gamma(x) - [(x - 1/2) log x - x + log(2 pi) / 2].
double stirling_remainder(double x);

// ---------------------------------------------------------------------------
// Error function family.

double erfc(double y);

/// exp(y^2) erfc(y) for y >= 0.
double erfcx(double y);

/// sqrt(pi) y erfcx(y) - 1 for y >= 0, which tends to -1/(2y^2) as y grows.
/// Computed without cancellation for large y.
double scaled_erfc_tail_minus_one(double y);

/// log(erfc(y) / 2) for any real y, finite for y up to ~1e154.
double log_half_erfc(double y);

// ---------------------------------------------------------------------------
// Regularized incomplete gamma functions P(a, z) = gamma(a, z) / Gamma(a) and
// Q = 1 - P.

/// Uniform-asymptotics variables for the pair (a, z).
struct TemmeFrame {
  double a = 0.0;
  double lambda = 0.0;
  /// (z - a) / a, rounded once.
  double lambda_minus_one = 0.0;
  /// sign(lambda - 1) sqrt(2 (lambda - 1 - log lambda)).
  double eta = 0.0;
  /// a eta^2 / 2 = a (lambda - 1 - log lambda), evaluated without cancellation.
  double half_a_eta_sq = 0.0;

  static TemmeFrame make(double a, double z);
};

enum class GammaRoute { kSeries, kContinuedFraction, kTemme, kParis };

struct IncompleteGamma {
  double log_p = 0.0;
  double log_q = 0.0;
  GammaRoute route = GammaRoute::kSeries;
  int terms = 0;
};

/// log P and log Q together. Power series for z < a + 1, continued fraction
/// for Q otherwise; both run in log space so neither value underflows.
IncompleteGamma incomplete_gamma(double a, double z, const PrecisionPolicy& policy = {});

double reg_gamma_p(double a, double z, const PrecisionPolicy& policy = {});
double reg_gamma_q(double a, double z, const PrecisionPolicy& policy = {});
double log_reg_gamma_p(double a, double z, const PrecisionPolicy& policy = {});
double log_reg_gamma_q(double a, double z, const PrecisionPolicy& policy = {});

/// log(z^a e^{-z} / Gamma(a)), the common prefactor of the series and the
/// continued fraction.
double log_gamma_prefactor(double a, double z);

/// Temme coefficients c0(eta), c1(eta). Taylor expansions in lambda - 1 are
/// used for |lambda - 1| < 0.1, where the closed forms cancel.
double temme_c0(const TemmeFrame& frame);
double temme_c1(const TemmeFrame& frame);

inline constexpr double kTemmeMinA = 10.0;

/// P(a, lambda a) from the uniform expansion truncated after c_order
/// (order 0 or 1). Requires a >= kTemmeMinA.
double reg_gamma_p_temme(const TemmeFrame& frame, int order = 1);

/// Q(a, lambda a) from the same expansion written in complementary form,
/// 1/2 erfc(eta sqrt(a/2)) + e^{-a eta^2/2} / sqrt(2 pi a) (c0 + c1/a), so
/// small tails keep their relative accuracy.
double reg_gamma_q_temme(const TemmeFrame& frame, int order = 1);

inline constexpr double kParisMinZ = 100.0;
inline constexpr double kParisMinSeparation = 10.0;

/// Two-term large-z approximation of Q(a, z):
/// z^a e^{-z} / Gamma(a) (1/(z-a) - z/(z-a)^3). Valid for z >= 100 and
/// (z - a)/sqrt(z) >= 10; the relative error there is below
/// paris_error_bound(a, z).
double reg_gamma_q_paris(double a, double z);
double log_reg_gamma_q_paris(double a, double z);

/// 3 / w^4 with w = (z - a) / sqrt(z): a bound on the first omitted term
/// z (2z + a) / (z - a)^4 of the large-z expansion.
double paris_error_bound(double a, double z);

// ---------------------------------------------------------------------------
// Jacobi theta function theta(z | i t) = sum_l exp(2 pi i l z - pi l^2 t).

inline constexpr double kThetaTransformThreshold = 1.0;

/// Real z, tau = i tau_im. Series in q = e^{-pi tau_im} for tau_im >= 1,
/// imaginary-transformed series otherwise.
double jacobi_theta(double z, double tau_im);
double log_jacobi_theta(double z, double tau_im);

/// Direct symmetric summation for complex z; no modular acceleration.
std::complex<double> jacobi_theta(std::complex<double> z, double tau_im);

namespace detail {
/// 1 + 2 sum_{l>=1} q^{l^2} cos(2 pi l z), any tau_im > 0.
double theta_q_series(double z, double tau_im);
/// tau_im^{-1/2} sum_l exp(-pi (l - z)^2 / tau_im), any tau_im > 0.
double theta_transformed_series(double z, double tau_im);
/// Jacobi triple product, truncated when q^{2m-1} drops below epsilon.
double theta_triple_product(double z, double tau_im);
}  // namespace detail

// ---------------------------------------------------------------------------
// Barnes G and friends.

/// zeta'(-1) = 1/12 - log A, A the Glaisher-Kinkelin constant.
double zeta_prime_minus_one() noexcept;

/// log G(x) for x > 0.
double log_barnes_g(double x);

/// sum_{j>=1} log(1 - rho^{2j}) for 0 < rho < 1.
double log_q_pochhammer_sum(double rho);

}  // namespace gapasym
