#pragma once

#include <complex>
#include <cstdint>

namespace latred {

/// Deterministic, splittable pseudo-random generator (splitmix64 core with an
/// explicit Box-Muller transform). Results do not depend on the standard
/// library's distribution implementations, so identically seeded runs produce
/// identical streams on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Derives an independent stream from (master, stream, index). Used to give
  /// every Monte Carlo trial its own generator so that execution order and
  /// thread count cannot change results.
  static Rng derive(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

  std::uint64_t next_u64();

  /// Uniform in [0, 1).
  double next_double();

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal N(0, 1).
  double next_gaussian();

  /// Circularly symmetric complex Gaussian CN(0, 1): real and imaginary parts
  /// independent N(0, 1/2).
  std::complex<double> next_cn01();

 private:
  std::uint64_t state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace latred
