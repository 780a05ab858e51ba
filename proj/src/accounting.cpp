#include "latred/accounting.hpp"

#include <cmath>

#include "latred/channel.hpp"
#include "latred/errors.hpp"

namespace latred {

double ConditionalTestStats::stderr_hat() const {
  if (evaluations == 0) return 0.0;
  double p = p_hat();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(evaluations));
}

const FlopTally& tally_reduction(const ReductionOutput& output) {
  if (!output.counting_enabled)
    throw ConfigError("tally_reduction: reduction ran with counting disabled");
  return output.tally;
}

std::pair<ConditionalTestStats, ConditionalTestStats> estimate_pc_pr(
    std::size_t n, std::uint64_t trials, double delta, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("estimate_pc_pr: need at least one trial");
  ReductionParams params;
  params.delta = delta;
  params.count_flops = false;
  ConditionalTestStats complex_stats{n, 0, 0};
  ConditionalTestStats real_stats{2 * n, 0, 0};
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 0x70637072ULL, t);
    ComplexMatrix h(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) h(i, j) = rng.next_cn01();
    ReductionOutput cred = clll_reduce(h, params);
    complex_stats.passes += cred.deep_test_passes;
    complex_stats.evaluations += cred.deep_test_evaluations;
    ReductionOutput rred = rlll_reduce(h, params);
    real_stats.passes += rred.deep_test_passes;
    real_stats.evaluations += rred.deep_test_evaluations;
  }
  return {complex_stats, real_stats};
}

double crcr(double arch_factor_k, double pc, double pr) {
  if (!(arch_factor_k > 0.0)) throw ConfigError("crcr: K must be positive");
  if (!(pc > 0.0) || pc > 1.0 || !(pr > 0.0) || pr > 1.0)
    throw ConfigError("crcr: pc and pr must lie in (0, 1]");
  return (arch_factor_k / 16.0) * (pc / pr);
}

}  // namespace latred
