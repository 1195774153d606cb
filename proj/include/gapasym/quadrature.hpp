#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace gapasym {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached per n; the returned reference stays valid for the program lifetime.
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureResult {
  double value = 0.0;
  double abs_err = 0.0;
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// Kronrod 15-point nodes (positive half) and weights, with the embedded
// Gauss 7-point weights at the odd positions.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct KronrodPanel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const KronrodPanel& other) const { return error < other.error; }
};

template <class F>
KronrodPanel kronrod_panel(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kKronrodWeights[7];
  double gauss = f_center * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature on a finite interval.
/// Bisects the panel with the largest error until the summed error estimate
/// falls below max(abs_tol, rel_tol |value|).
template <class F>
QuadratureResult integrate_gauss_kronrod(F f, double lo, double hi, double abs_tol,
                                         double rel_tol = 0.0, int max_panels = 4000) {
  std::priority_queue<detail::KronrodPanel> panels;
  panels.push(detail::kronrod_panel(f, lo, hi));
  QuadratureResult result;
  result.evaluations = 15;
  double value = panels.top().value;
  double error = panels.top().error;
  while (static_cast<int>(panels.size()) < max_panels) {
    if (error <= std::max(abs_tol, rel_tol * std::abs(value))) {
      result.converged = true;
      break;
    }
    const auto worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto left = detail::kronrod_panel(f, worst.lo, mid);
    const auto right = detail::kronrod_panel(f, mid, worst.hi);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum from scratch to drop the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = value;
  result.abs_err = error;
  if (!result.converged) result.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  return result;
}

/// Tanh-sinh (double exponential) quadrature on a finite interval. Integrable
/// endpoint singularities are fine: abscissas near an endpoint are formed
/// from their distance to it, never from a rounded difference.
template <class F>
QuadratureResult integrate_tanh_sinh(F f, double lo, double hi, double abs_tol,
                                     int max_levels = 12) {
  constexpr double half_pi = 0.5 * std::numbers::pi;
  constexpr double t_max = 4.5;
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  QuadratureResult result;

  // Contribution of the abscissa pair at +-t.
  auto pair = [&](double t) {
    const double u = half_pi * std::sinh(t);
    const double cosh_u = std::cosh(u);
    const double weight = half_pi * std::cosh(t) / (cosh_u * cosh_u);
    // 1 - tanh(u) = 1 / (e^u cosh u), the distance to the nearer endpoint.
    const double gap = half / (std::exp(u) * cosh_u);
    result.evaluations += 2;
    return weight * (f(lo + gap) + f(hi - gap));
  };

  double h = 1.0;
  double sum = half_pi * f(center);  // t = 0 has weight pi/2
  result.evaluations = 1;
  for (double t = h; t <= t_max; t += h) sum += pair(t);
  double estimate = h * sum * half;
  for (int level = 1; level <= max_levels; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2.0 * h) sum += pair(t);
    const double refined = h * sum * half;
    result.abs_err = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 3 && result.abs_err <= abs_tol) {
      result.converged = true;
      break;
    }
  }
  result.value = estimate;
  return result;
}

}  // namespace gapasym
