#pragma once

#include <cstdint>

#include "latred/matrix.hpp"
#include "latred/rng.hpp"

namespace latred {

/// One flat-fading channel draw: y = H x + w with H having i.i.d. CN(0,1)
/// entries and w i.i.d. CN(0, noise_var) (noise_var = 2 sigma^2, the total
/// variance per complex entry; each component is N(0, sigma^2)).
struct ChannelInstance {
  ComplexMatrix h;
  double noise_var = 0.0;
  std::uint64_t seed = 0;
};

/// Draws an m x n channel; sigma_sq is the per-component noise variance.
ChannelInstance sample_channel(std::size_t m, std::size_t n, double sigma_sq, Rng& rng);

/// y = H x + w with fresh noise from rng.
std::vector<cplx> transmit(const ChannelInstance& ch, const std::vector<cplx>& x,
                           Rng& rng);

}  // namespace latred
