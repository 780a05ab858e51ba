#include "latred/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>

#include "latred/channel.hpp"
#include "latred/constellation.hpp"
#include "latred/detectors.hpp"
#include "latred/errors.hpp"
#include "latred/reduction.hpp"
#include "latred/rng.hpp"

namespace latred {

const char* detector_name(DetectorKind d) {
  switch (d) {
    case DetectorKind::Zf: return "zf";
    case DetectorKind::Sic: return "sic";
    case DetectorKind::Vblast: return "vblast";
    case DetectorKind::Ml: return "ml";
    case DetectorKind::LrZfClll: return "lr-zf-clll";
    case DetectorKind::LrSicClll: return "lr-sic-clll";
    case DetectorKind::LrZfRlll: return "lr-zf-rlll";
    case DetectorKind::LrSicRlll: return "lr-sic-rlll";
  }
  return "?";
}

DetectorKind parse_detector(const std::string& name) {
  for (int d = 0; d <= static_cast<int>(DetectorKind::LrSicRlll); ++d)
    if (name == detector_name(static_cast<DetectorKind>(d)))
      return static_cast<DetectorKind>(d);
  throw ConfigError("unknown detector: " + name);
}

std::vector<DetectorKind> parse_detector_list(const std::string& comma_separated) {
  std::vector<DetectorKind> out;
  std::string token;
  for (char c : comma_separated + ",") {
    if (c == ',') {
      if (!token.empty()) out.push_back(parse_detector(token));
      token.clear();
    } else if (c != ' ') {
      token += c;
    }
  }
  if (out.empty()) throw ConfigError("empty detector list");
  return out;
}

void SweepConfig::validate() const {
  if (n < 1 || m < n) throw ConfigError("sweep: need m >= n >= 1");
  if (snr_db.empty()) throw ConfigError("sweep: empty SNR grid");
  for (std::size_t i = 1; i < snr_db.size(); ++i)
    if (!(snr_db[i] > snr_db[i - 1]))
      throw ConfigError("sweep: SNR grid must be strictly ascending");
  if (max_trials_per_point < 1) throw ConfigError("sweep: need at least one trial");
  if (detectors.empty()) throw ConfigError("sweep: no detectors selected");
  if (symbols_per_channel < 1) throw ConfigError("sweep: symbols_per_channel >= 1");
  Constellation c = Constellation::qam(qam);  // validates the order
  for (DetectorKind d : detectors)
    if (d == DetectorKind::Ml &&
        static_cast<double>(n) * std::log2(static_cast<double>(qam)) > std::log2(1e6))
      throw ConfigError("sweep: ml detector refused, M^n exceeds 1e6");
  (void)c;
}

double DetectorPointStats::ver_stderr() const {
  if (trials == 0) return 0.0;
  double p = ver();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double DetectorPointStats::ber(std::size_t bits_per_vector) const {
  std::uint64_t total = trials * bits_per_vector;
  return total ? static_cast<double>(bit_errors) / static_cast<double>(total) : 0.0;
}

double DetectorPointStats::ber_stderr(std::size_t bits_per_vector) const {
  std::uint64_t total = trials * bits_per_vector;
  if (total == 0) return 0.0;
  double p = ber(bits_per_vector);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

DetectorPointStats& DetectorPointStats::operator+=(const DetectorPointStats& o) {
  trials += o.trials;
  channels += o.channels;
  vector_errors += o.vector_errors;
  bit_errors += o.bit_errors;
  preproc_flops += o.preproc_flops;
  proc_flops += o.proc_flops;
  return *this;
}

namespace {

constexpr std::size_t kChannelsPerChunk = 16;

struct ChunkResult {
  std::vector<DetectorPointStats> per_detector;
};

// All detectors run on the same channels, data and noise; per-chunk seeding
// keeps results independent of execution order and thread count.
ChunkResult run_chunk(const SweepConfig& cfg, const Constellation& constellation,
                      std::size_t point, double sigma_sq, std::uint64_t first_channel,
                      std::size_t channel_count) {
  const std::size_t ndet = cfg.detectors.size();
  ChunkResult res;
  res.per_detector.assign(ndet, {});

  bool want_clll = false, want_rlll = false;
  for (DetectorKind d : cfg.detectors) {
    if (d == DetectorKind::LrZfClll || d == DetectorKind::LrSicClll) want_clll = true;
    if (d == DetectorKind::LrZfRlll || d == DetectorKind::LrSicRlll) want_rlll = true;
  }
  ReductionParams rp;
  rp.delta = cfg.delta;

  const std::size_t bits_per_vector =
      cfg.n * static_cast<std::size_t>(constellation.bits_per_symbol());

  for (std::size_t cc = 0; cc < channel_count; ++cc) {
    std::uint64_t ci = first_channel + cc;
    Rng rng_channel = Rng::derive(cfg.master_seed, (point << 1) ^ 0x6368616eULL, ci);
    Rng rng_data = Rng::derive(cfg.master_seed, (point << 1) ^ 0x64617461ULL, ci);

    ChannelInstance ch = sample_channel(cfg.m, cfg.n, sigma_sq, rng_channel);

    std::optional<ReductionOutput> clll, rlll;
    double clll_flops = 0.0, rlll_flops = 0.0;
    if (want_clll) {
      clll = clll_reduce(ch.h, rp, cfg.cost);
      clll_flops = clll->flops_total();
    }
    if (want_rlll) {
      rlll = rlll_reduce(ch.h, rp, cfg.cost);
      rlll_flops = rlll->flops_total();
    }

    // per-channel workspaces and their preprocessing cost
    std::vector<FlopTally> pre(ndet);
    std::vector<std::optional<ZfWorkspace>> zf_ws(ndet);
    std::vector<std::optional<SicWorkspace>> sic_ws(ndet);
    std::vector<std::optional<MlWorkspace>> ml_ws(ndet);
    std::vector<std::optional<LrWorkspace>> lr_ws(ndet);
    for (std::size_t di = 0; di < ndet; ++di) {
      switch (cfg.detectors[di]) {
        case DetectorKind::Zf:
          zf_ws[di] = make_zf_workspace(ch.h, &pre[di]);
          break;
        case DetectorKind::Sic:
          sic_ws[di] = make_sic_workspace(ch.h, SicOrdering::Natural, &pre[di]);
          break;
        case DetectorKind::Vblast:
          sic_ws[di] = make_sic_workspace(ch.h, SicOrdering::Vblast, &pre[di]);
          break;
        case DetectorKind::Ml:
          ml_ws[di] = make_ml_workspace(ch.h, constellation, &pre[di]);
          break;
        case DetectorKind::LrZfClll:
          lr_ws[di] = make_lr_workspace(ch.h, *clll, InnerDetector::Zf, constellation,
                                        &pre[di]);
          break;
        case DetectorKind::LrSicClll:
          lr_ws[di] = make_lr_workspace(ch.h, *clll, InnerDetector::Sic, constellation,
                                        &pre[di]);
          break;
        case DetectorKind::LrZfRlll:
          lr_ws[di] = make_lr_workspace(ch.h, *rlll, InnerDetector::Zf, constellation,
                                        &pre[di]);
          break;
        case DetectorKind::LrSicRlll:
          lr_ws[di] = make_lr_workspace(ch.h, *rlll, InnerDetector::Sic, constellation,
                                        &pre[di]);
          break;
      }
      double reduction_flops = 0.0;
      if (cfg.detectors[di] == DetectorKind::LrZfClll ||
          cfg.detectors[di] == DetectorKind::LrSicClll)
        reduction_flops = clll_flops;
      if (cfg.detectors[di] == DetectorKind::LrZfRlll ||
          cfg.detectors[di] == DetectorKind::LrSicRlll)
        reduction_flops = rlll_flops;
      res.per_detector[di].preproc_flops +=
          reduction_flops + pre[di].weighted_total(cfg.cost);
      res.per_detector[di].channels += 1;
    }

    std::vector<std::uint8_t> bits(bits_per_vector);
    for (std::size_t s = 0; s < cfg.symbols_per_channel; ++s) {
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng_data.next_u64() & 1);
      std::vector<cplx> x = qam_map(bits, constellation, cfg.n);
      std::vector<cplx> y = transmit(ch, x, rng_data);

      for (std::size_t di = 0; di < ndet; ++di) {
        FlopTally proc;
        DetectionResult det;
        switch (cfg.detectors[di]) {
          case DetectorKind::Zf:
            det = detect_zf_with(*zf_ws[di], y, constellation, &proc);
            break;
          case DetectorKind::Sic:
          case DetectorKind::Vblast:
            det = detect_sic_with(*sic_ws[di], y, constellation, &proc);
            break;
          case DetectorKind::Ml:
            det = detect_ml_with(*ml_ws[di], y, &proc);
            break;
          default:
            det = lr_detect_with(*lr_ws[di], y, constellation, &proc);
            break;
        }
        DetectorPointStats& st = res.per_detector[di];
        st.trials += 1;
        st.proc_flops += proc.weighted_total(cfg.cost);
        bool vec_err = false;
        for (std::size_t i = 0; i < cfg.n; ++i)
          if (det.symbols[i] != x[i]) {
            vec_err = true;
            break;
          }
        if (vec_err) {
          st.vector_errors += 1;
          std::vector<std::uint8_t> rx_bits = qam_demap(det.symbols, constellation);
          for (std::size_t b = 0; b < bits_per_vector; ++b)
            if (rx_bits[b] != bits[b]) st.bit_errors += 1;
        }
      }
    }
  }
  return res;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  Constellation constellation = Constellation::qam(config.qam);
  const std::size_t ndet = config.detectors.size();

  SweepResult result;
  result.config = config;
  result.bits_per_vector =
      config.n * static_cast<std::size_t>(constellation.bits_per_symbol());
  result.stats.assign(config.snr_db.size(), std::vector<DetectorPointStats>(ndet));

  const double es = constellation.avg_energy();
  const unsigned workers = std::max(1u, config.threads);

  for (std::size_t p = 0; p < config.snr_db.size(); ++p) {
    double snr_lin = std::pow(10.0, config.snr_db[p] / 10.0);
    // SNR = n Es / (2 sigma^2)
    double noise_var = static_cast<double>(config.n) * es / snr_lin;
    double sigma_sq = noise_var / 2.0;

    std::uint64_t channels_done = 0;
    std::uint64_t max_channels =
        (config.max_trials_per_point + config.symbols_per_channel - 1) /
        config.symbols_per_channel;

    while (channels_done < max_channels) {
      // one deterministic round: `workers` chunks, merged in chunk order
      std::vector<std::pair<std::uint64_t, std::size_t>> chunks;
      std::uint64_t c = channels_done;
      for (unsigned w = 0; w < workers && c < max_channels; ++w) {
        std::size_t count = static_cast<std::size_t>(
            std::min<std::uint64_t>(kChannelsPerChunk, max_channels - c));
        chunks.emplace_back(c, count);
        c += count;
      }
      std::vector<ChunkResult> round(chunks.size());
      if (chunks.size() == 1) {
        round[0] = run_chunk(config, constellation, p, sigma_sq, chunks[0].first,
                             chunks[0].second);
      } else {
        std::vector<std::future<ChunkResult>> futures;
        futures.reserve(chunks.size());
        for (auto& [first, count] : chunks)
          futures.push_back(std::async(std::launch::async, run_chunk, std::cref(config),
                                       std::cref(constellation), p, sigma_sq, first,
                                       count));
        for (std::size_t i = 0; i < futures.size(); ++i) round[i] = futures[i].get();
      }
      for (const ChunkResult& cr : round)
        for (std::size_t di = 0; di < ndet; ++di)
          result.stats[p][di] += cr.per_detector[di];
      channels_done = c;

      if (config.target_errors > 0) {
        bool all_done = true;
        for (std::size_t di = 0; di < ndet; ++di)
          if (result.stats[p][di].vector_errors < config.target_errors) {
            all_done = false;
            break;
          }
        if (all_done) break;
      }
    }
  }
  return result;
}

CsvTable sweep_to_csv(const SweepResult& result) {
  CsvTable t({"detector", "snr_db", "trials", "vector_errors", "bit_errors", "ver",
              "ver_stderr", "ber", "ber_stderr", "mean_preprocessing_flops",
              "mean_processing_flops"});
  for (std::size_t p = 0; p < result.config.snr_db.size(); ++p) {
    for (std::size_t di = 0; di < result.config.detectors.size(); ++di) {
      const DetectorPointStats& st = result.stats[p][di];
      t.cell(detector_name(result.config.detectors[di]))
          .cell(result.config.snr_db[p])
          .cell(st.trials)
          .cell(st.vector_errors)
          .cell(st.bit_errors)
          .cell(st.ver())
          .cell(st.ver_stderr())
          .cell(st.ber(result.bits_per_vector))
          .cell(st.ber_stderr(result.bits_per_vector))
          .cell(st.mean_preproc_flops())
          .cell(st.mean_proc_flops());
      t.end_row();
    }
  }
  return t;
}

}  // namespace latred
