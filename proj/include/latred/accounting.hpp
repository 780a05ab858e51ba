#pragma once

#include <cstdint>
#include <utility>

#include "latred/flops.hpp"
#include "latred/reduction.hpp"

namespace latred {

/// Pass statistics of the conditional deep size-reduction test, aggregated
/// over many reductions.
struct ConditionalTestStats {
  std::size_t n = 0;  // lattice dimension the statistic was measured at
  std::uint64_t passes = 0;
  std::uint64_t evaluations = 0;

  double p_hat() const {
    return evaluations == 0 ? 0.0
                            : static_cast<double>(passes) / static_cast<double>(evaluations);
  }
  double stderr_hat() const;
};

/// The flop tally recorded while a reduction ran. Throws ConfigError when the
/// reduction was produced with counting disabled.
const FlopTally& tally_reduction(const ReductionOutput& output);

/// Runs `trials` reductions of i.i.d. CN(0,1) n x n bases directly (complex
/// path) and through the real embedding (real path), instrumenting the deep
/// conditional test. Returns (complex stats at n, real stats at 2n).
std::pair<ConditionalTestStats, ConditionalTestStats> estimate_pc_pr(
    std::size_t n, std::uint64_t trials, double delta, std::uint64_t seed);

/// Complex-to-real complexity ratio (K/16) * (pc/pr).
double crcr(double arch_factor_k, double pc, double pr);

}  // namespace latred
