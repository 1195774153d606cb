#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gapasym/errors.hpp"
#include "gapasym/exact.hpp"
#include "gapasym/parallel.hpp"

namespace gapasym {
namespace {

struct Hole {
  double lo;
  double hi;
};

std::seed_seq chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
}

}  // namespace

std::vector<double> kostlan_sample_radii(const ModelParams& params, int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("n must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<double> radii(static_cast<std::size_t>(n));
  const double inv_2b = 1.0 / (2.0 * params.b());
  for (int j = 0; j < n; ++j) {
    std::gamma_distribution<double> gamma((j + 1 + params.alpha()) / params.b(), 1.0);
    radii[static_cast<std::size_t>(j)] = std::pow(gamma(rng) / n, inv_2b);
  }
  return radii;
}

McEstimate mc_gap_probability(const ModelParams& params, int n, std::span<const double> radii,
                              std::int64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw DomainError("samples must be at least 1");
  const auto exact = exact_log_gap_probability(params, n, radii);
  McEstimate out;
  out.samples = samples;
  if (std::exp(exact.log_pn) < kMcMinProbability) {
    out.estimate = std::exp(exact.log_pn);
    out.analytic = true;
    return out;
  }

  // Holes in the t = n u^{2b} variable, where the draws live.
  std::vector<Hole> holes;
  for (std::size_t k = 0; k + 1 < radii.size(); k += 2) {
    const auto to_t = [&](double r) {
      return std::isinf(r) ? std::numeric_limits<double>::infinity()
                           : n * std::pow(r, 2.0 * params.b());
    };
    holes.push_back({to_t(radii[k]), to_t(radii[k + 1])});
  }

  const auto chunks = static_cast<std::size_t>((samples + kMcChunkSize - 1) / kMcChunkSize);
  std::vector<std::int64_t> hits(chunks, 0);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    auto seq = chunk_seed(seed, c);
    std::mt19937_64 rng(seq);
    std::vector<std::gamma_distribution<double>> draws;
    draws.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) draws.emplace_back((j + 1 + params.alpha()) / params.b(), 1.0);
    const std::int64_t begin = static_cast<std::int64_t>(c) * kMcChunkSize;
    const std::int64_t count = std::min(kMcChunkSize, samples - begin);
    std::int64_t kept = 0;
    for (std::int64_t s = 0; s < count; ++s) {
      bool empty = true;
      for (auto& draw : draws) {
        const double t = draw(rng);
        for (const auto& h : holes) {
          if (t > h.lo && t < h.hi) {
            empty = false;
            break;
          }
        }
        if (!empty) break;
      }
      kept += empty ? 1 : 0;
    }
    hits[c] = kept;
  });

  std::int64_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  out.estimate = p;
  out.std_err = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  out.insufficient_samples = total == 0;
  return out;
}

McEstimate mc_gap_probability(const ModelParams& params, int n, const GapConfig& gap,
                              std::int64_t samples, std::uint64_t seed, unsigned threads) {
  return mc_gap_probability(params, n, gap.radii(), samples, seed, threads);
}

}  // namespace gapasym
