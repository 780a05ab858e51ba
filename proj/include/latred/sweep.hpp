#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latred/csv.hpp"
#include "latred/flops.hpp"
#include "latred/matrix.hpp"

namespace latred {

enum class DetectorKind {
  Zf,
  Sic,
  Vblast,
  Ml,
  LrZfClll,
  LrSicClll,
  LrZfRlll,
  LrSicRlll,
};

const char* detector_name(DetectorKind d);
DetectorKind parse_detector(const std::string& name);  // throws ConfigError
std::vector<DetectorKind> parse_detector_list(const std::string& comma_separated);

/// Monte Carlo error-rate experiment description. SNR is defined as
/// n * Es / (2 sigma^2): average received signal power per receive antenna
/// over the noise power per receive antenna.
struct SweepConfig {
  std::size_t m = 4;
  std::size_t n = 4;
  int qam = 16;
  std::vector<double> snr_db;
  std::uint64_t max_trials_per_point = 100000;
  /// A point stops early once every detector has at least this many vector
  /// errors (0 disables early stopping).
  std::uint64_t target_errors = 200;
  double delta = 0.99;
  std::vector<DetectorKind> detectors;
  std::uint64_t master_seed = 1;
  std::size_t symbols_per_channel = 1;  // trials per channel draw
  unsigned threads = 1;
  CostModel cost = CostModel::standard();

  void validate() const;  // throws ConfigError
};

struct DetectorPointStats {
  std::uint64_t trials = 0;
  std::uint64_t channels = 0;
  std::uint64_t vector_errors = 0;
  std::uint64_t bit_errors = 0;
  double preproc_flops = 0.0;  // summed over channels (reduction + factorization)
  double proc_flops = 0.0;     // summed over trials

  double ver() const {
    return trials ? static_cast<double>(vector_errors) / static_cast<double>(trials) : 0.0;
  }
  double ver_stderr() const;
  double ber(std::size_t bits_per_vector) const;
  double ber_stderr(std::size_t bits_per_vector) const;
  double mean_preproc_flops() const {
    return channels ? preproc_flops / static_cast<double>(channels) : 0.0;
  }
  double mean_proc_flops() const {
    return trials ? proc_flops / static_cast<double>(trials) : 0.0;
  }

  DetectorPointStats& operator+=(const DetectorPointStats& o);
};

struct SweepResult {
  SweepConfig config;
  std::size_t bits_per_vector = 0;
  std::vector<std::vector<DetectorPointStats>> stats;  // [snr point][detector]
};

/// Runs the experiment: one channel draw and one set of reductions per
/// coherence block, symbols_per_channel data vectors per block, every
/// detector fed the same channels and noise. Deterministic for a given
/// master_seed regardless of thread count.
SweepResult run_sweep(const SweepConfig& config);

/// Fixed-schema CSV of a sweep result (one row per detector and SNR point).
CsvTable sweep_to_csv(const SweepResult& result);

}  // namespace latred
