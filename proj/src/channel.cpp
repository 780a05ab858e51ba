#include "latred/channel.hpp"

#include <cmath>

#include "latred/errors.hpp"

namespace latred {

ChannelInstance sample_channel(std::size_t m, std::size_t n, double sigma_sq, Rng& rng) {
  if (n < 1 || m < n) throw ConfigError("sample_channel: need m >= n >= 1");
  if (!(sigma_sq > 0.0)) throw ConfigError("sample_channel: sigma_sq must be positive");
  ChannelInstance ch;
  ch.h = ComplexMatrix(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) ch.h(i, j) = rng.next_cn01();
  ch.noise_var = 2.0 * sigma_sq;
  return ch;
}

std::vector<cplx> transmit(const ChannelInstance& ch, const std::vector<cplx>& x,
                           Rng& rng) {
  if (x.size() != ch.h.cols()) throw DimensionError("transmit: x length mismatch");
  std::vector<cplx> y = ch.h * x;
  double comp_sigma = std::sqrt(ch.noise_var / 2.0);
  for (cplx& v : y)
    v += cplx(comp_sigma * rng.next_gaussian(), comp_sigma * rng.next_gaussian());
  return y;
}

}  // namespace latred
