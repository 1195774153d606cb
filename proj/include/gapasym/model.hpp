#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gapasym {

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;
};

/// Parameters (b, alpha) of the Mittag-Leffler ensemble with weight
/// |z|^{2 alpha} exp(-n |z|^{2b}).
class ModelParams {
 public:
  ModelParams(double b, double alpha);

  /// b = n1 / n2 exactly; enables the closed form of the G(b, alpha) constant.
  static ModelParams from_rational(std::int64_t n1, std::int64_t n2, double alpha);

  double b() const noexcept { return b_; }
  double alpha() const noexcept { return alpha_; }
  const std::optional<Rational>& b_rational() const noexcept { return b_rational_; }

  /// Radius b^{-1/(2b)} of the support of the limiting density.
  double bulk_radius() const noexcept;

 private:
  double b_;
  double alpha_;
  std::optional<Rational> b_rational_;
};

enum class CaseTag { kBulk, kUnbounded, kDisk, kDiskUnbounded };

std::string_view to_string(CaseTag tag) noexcept;

/// Ordered radii r_1 < ... < r_{2g} of the hole region. r_1 may be 0 and
/// r_{2g} may be +inf. The constructor checks only structural invariants;
/// the bulk bound depends on b and is checked by classify().
class GapConfig {
 public:
  explicit GapConfig(std::vector<double> radii);

  std::span<const double> radii() const noexcept { return radii_; }
  int g() const noexcept { return static_cast<int>(radii_.size() / 2); }
  bool has_disk() const noexcept { return radii_.front() == 0.0; }
  bool is_unbounded() const noexcept;

 private:
  std::vector<double> radii_;
};

/// Validates the radii against the bulk of `params` and returns which of the
/// four asymptotic regimes applies.
CaseTag classify(const GapConfig& gap, const ModelParams& params);

/// Limiting mean density b^2/pi |z|^{2b-2} on the disk of radius b^{-1/(2b)}.
double limiting_density(double modulus, const ModelParams& params);

/// Mean-value point (r_hi^{2b} - r_lo^{2b}) / (2 log(r_hi / r_lo)).
double t2k(double r_lo, double r_hi, const ModelParams& params);

}  // namespace gapasym
