#include "latred/rng.hpp"

#include <cmath>

namespace latred {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix64(s);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {
  // Warm up so that small seeds do not produce correlated first outputs.
  (void)next_u64();
}

Rng Rng::derive(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t s = mix(master ^ 0xa0761d6478bd642fULL);
  s = mix(s ^ mix(stream ^ 0xe7037ed1a0b428dbULL));
  s = mix(s ^ mix(index ^ 0x8ebc6af09c88c6e3ULL));
  return Rng(s);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::next_double() {
  // 53 high bits -> double in [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t n) {
  // Rejection-free multiply-shift; bias is negligible for the n used here
  // (constellation sizes, trial partitioning), but keep it exact anyway.
  if (n == 0) return 0;
  std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double Rng::next_gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_gaussian_;
  }
  // Box-Muller; u strictly positive to keep log finite.
  double u = 0.0;
  do {
    u = next_double();
  } while (u <= 0.0);
  double v = next_double();
  double radius = std::sqrt(-2.0 * std::log(u));
  double angle = 2.0 * M_PI * v;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::complex<double> Rng::next_cn01() {
  constexpr double half_sqrt = 0.70710678118654752440;  // sqrt(1/2)
  double re = next_gaussian() * half_sqrt;
  double im = next_gaussian() * half_sqrt;
  return {re, im};
}

}  // namespace latred
