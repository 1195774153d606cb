#include "gapasym/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gapasym/errors.hpp"

namespace gapasym {

ModelParams::ModelParams(double b, double alpha) : b_(b), alpha_(alpha) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("b must be a finite positive number, got " + std::to_string(b));
  }
  if (!(alpha > -1.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be finite and > -1, got " + std::to_string(alpha));
  }
}

ModelParams ModelParams::from_rational(std::int64_t n1, std::int64_t n2, double alpha) {
  if (n1 <= 0 || n2 <= 0) {
    throw DomainError("rational b requires positive integers n1/n2");
  }
  ModelParams p(static_cast<double>(n1) / static_cast<double>(n2), alpha);
  p.b_rational_ = Rational{n1, n2};
  return p;
}

double ModelParams::bulk_radius() const noexcept { return std::pow(b_, -1.0 / (2.0 * b_)); }

std::string_view to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::kBulk:
      return "BULK";
    case CaseTag::kUnbounded:
      return "UNBOUNDED";
    case CaseTag::kDisk:
      return "DISK";
    case CaseTag::kDiskUnbounded:
      return "DISK_UNBOUNDED";
  }
  return "?";
}

GapConfig::GapConfig(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty() || radii_.size() % 2 != 0) {
    throw ValidationError("radii list must be non-empty with an even number of entries");
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    const double r = radii_[i];
    if (std::isnan(r) || r < 0.0) {
      throw ValidationError("radii must be nonnegative numbers");
    }
    if (std::isinf(r) && i + 1 != radii_.size()) {
      throw ValidationError("only the last radius may be infinite");
    }
    if (i > 0) {
      if (r == radii_[i - 1]) {
        throw DegenerateRadii("radii must be strictly increasing; r_" + std::to_string(i) +
                              " == r_" + std::to_string(i + 1));
      }
      if (r < radii_[i - 1]) {
        throw UnsortedRadii("radii must be given in increasing order");
      }
    }
  }
}

bool GapConfig::is_unbounded() const noexcept { return std::isinf(radii_.back()); }

CaseTag classify(const GapConfig& gap, const ModelParams& params) {
  const double edge = params.bulk_radius();
  const auto radii = gap.radii();
  const std::size_t finite_count = gap.is_unbounded() ? radii.size() - 1 : radii.size();
  for (std::size_t i = 0; i < finite_count; ++i) {
    if (radii[i] == edge) {
      throw HardEdgeRadius("radius " + std::to_string(radii[i]) +
                           " lies on the edge of the bulk b^(-1/(2b))");
    }
    if (radii[i] > edge) {
      throw RadiiOutOfBulk("radius " + std::to_string(radii[i]) + " exceeds the bulk radius " +
                           std::to_string(edge));
    }
  }
  const bool disk = gap.has_disk();
  const bool unbounded = gap.is_unbounded();
  if (disk && unbounded) {
    if (gap.g() < 2) {
      throw DomainError("the hole [0, inf) covers the whole plane");
    }
    return CaseTag::kDiskUnbounded;
  }
  if (disk) return CaseTag::kDisk;
  if (unbounded) return CaseTag::kUnbounded;
  return CaseTag::kBulk;
}

double limiting_density(double modulus, const ModelParams& params) {
  if (!(modulus >= 0.0)) throw DomainError("modulus must be nonnegative");
  const double b = params.b();
  if (modulus > params.bulk_radius()) return 0.0;
  return b * b / std::numbers::pi * std::pow(modulus, 2.0 * b - 2.0);
}

double t2k(double r_lo, double r_hi, const ModelParams& params) {
  if (!(r_lo > 0.0) || !std::isfinite(r_hi)) {
    throw DomainError("t2k requires 0 < r_lo < r_hi < inf");
  }
  if (r_lo == r_hi) {
    throw DegenerateRadii("t2k requires r_lo < r_hi");
  }
  if (r_lo > r_hi) {
    throw UnsortedRadii("t2k requires r_lo < r_hi");
  }
  // Written with expm1/log1p so that nearly equal radii keep full precision.
  const double b = params.b();
  const double log_ratio = std::log1p((r_hi - r_lo) / r_lo);
  return std::pow(r_lo, 2.0 * b) * std::expm1(2.0 * b * log_ratio) / (2.0 * log_ratio);
}

}  // namespace gapasym
