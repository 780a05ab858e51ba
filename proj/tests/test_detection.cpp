#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latred/channel.hpp"
#include "latred/constellation.hpp"
#include "latred/detectors.hpp"
#include "latred/errors.hpp"
#include "latred/rng.hpp"
#include "test_util.hpp"

using namespace latred;
using testutil::random_complex;

namespace {

std::vector<cplx> random_symbols(const Constellation& c, std::size_t n, Rng& rng) {
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = c.point(static_cast<int>(rng.next_below(c.order())));
  return x;
}

bool same_symbols(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// independent exhaustive scorer used as the ML oracle
std::vector<cplx> ml_oracle(const ComplexMatrix& h, const std::vector<cplx>& y,
                            const Constellation& c) {
  std::size_t n = h.cols();
  std::vector<int> idx(n, 0), best_idx(n, 0);
  double best = 1e300;
  for (;;) {
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = c.point(idx[i]);
    std::vector<cplx> hx = h * x;
    double d = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) d += std::norm(y[i] - hx[i]);
    if (d < best) {
      best = d;
      best_idx = idx;
    }
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == c.order()) idx[pos++] = 0;
    if (pos == n) break;
  }
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c.point(best_idx[i]);
  return out;
}

}  // namespace

TEST_CASE("constellation grid, energy, gray labels") {
  for (int order : {4, 16, 64, 256}) {
    Constellation c = Constellation::qam(order);
    CHECK(static_cast<int>(c.points().size()) == order);
    double side = std::sqrt(static_cast<double>(order));
    double energy = 0.0;
    for (const cplx& p : c.points()) {
      // odd coordinates within the box
      CHECK(std::fabs(std::fmod(std::fabs(p.real()), 2.0) - 1.0) < 1e-12);
      CHECK(std::fabs(std::fmod(std::fabs(p.imag()), 2.0) - 1.0) < 1e-12);
      CHECK(std::fabs(p.real()) <= side - 1.0);
      CHECK(std::fabs(p.imag()) <= side - 1.0);
      energy += std::norm(p);
    }
    CHECK(energy / order == doctest::Approx(2.0 * (order - 1) / 3.0));
    CHECK(c.avg_energy() == doctest::Approx(2.0 * (order - 1) / 3.0));
  }
  CHECK_THROWS_AS(Constellation::qam(8), ConfigError);
}

TEST_CASE("gray labeling: adjacent levels differ in exactly one bit") {
  for (int order : {4, 16, 64}) {
    Constellation c = Constellation::qam(order);
    for (int a = 0; a < c.side(); ++a)
      for (int b = 0; b < c.side(); ++b) {
        std::vector<std::uint8_t> bits;
        c.append_bits(a * c.side() + b, bits);
        auto hamming = [&](int other_index) {
          std::vector<std::uint8_t> ob;
          c.append_bits(other_index, ob);
          int d = 0;
          for (std::size_t i = 0; i < bits.size(); ++i) d += bits[i] != ob[i];
          return d;
        };
        if (a + 1 < c.side()) CHECK(hamming((a + 1) * c.side() + b) == 1);
        if (b + 1 < c.side()) CHECK(hamming(a * c.side() + b + 1) == 1);
      }
  }
}

TEST_CASE("qam map/demap round trip") {
  Constellation c = Constellation::qam(16);
  Rng rng(41);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::uint8_t> bits(4 * c.bits_per_symbol());
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    std::vector<cplx> symbols = qam_map(bits, c, 4);
    CHECK(qam_demap(symbols, c) == bits);
  }
  std::vector<std::uint8_t> bad(7);
  CHECK_THROWS_AS(qam_map(bad, c, 4), ConfigError);
}

TEST_CASE("channel sampling is deterministic and has the right moments") {
  Rng a(99), b(99);
  ChannelInstance ca = sample_channel(4, 4, 0.5, a);
  ChannelInstance cb = sample_channel(4, 4, 0.5, b);
  CHECK(testutil::max_abs_diff(ca.h, cb.h) == 0.0);
  CHECK(ca.noise_var == doctest::Approx(1.0));

  Rng rng(123);
  double sum_sq = 0.0;
  std::size_t count = 0;
  double col_energy = 0.0;
  std::size_t cols = 0;
  for (int rep = 0; rep < 2500; ++rep) {
    ChannelInstance ch = sample_channel(8, 4, 0.5, rng);
    for (std::size_t j = 0; j < 4; ++j) {
      col_energy += column_norm_sq(ch.h, j);
      ++cols;
      for (std::size_t i = 0; i < 8; ++i) {
        sum_sq += ch.h(i, j).real() * ch.h(i, j).real() +
                  ch.h(i, j).imag() * ch.h(i, j).imag();
        count += 2;
      }
    }
  }
  CHECK(sum_sq / count == doctest::Approx(0.5).epsilon(0.01));
  CHECK(col_energy / cols == doctest::Approx(8.0).epsilon(0.02));
}

TEST_CASE("noiseless recovery for every detector") {
  Rng rng(4242);
  Constellation c = Constellation::qam(16);
  ReductionParams rp;
  rp.delta = 0.99;
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    std::vector<cplx> x = random_symbols(c, 4, rng);
    std::vector<cplx> y = h * x;
    CHECK(same_symbols(detect_zf(h, y, c).symbols, x));
    CHECK(same_symbols(detect_sic(h, y, c).symbols, x));
    CHECK(same_symbols(detect_sic(h, y, c, SicOrdering::Vblast).symbols, x));
    CHECK(same_symbols(detect_ml(h, y, c).symbols, x));
    ReductionOutput clll = clll_reduce(h, rp);
    ReductionOutput rlll = rlll_reduce(h, rp);
    CHECK(same_symbols(lr_detect(h, y, clll, InnerDetector::Zf, c).symbols, x));
    CHECK(same_symbols(lr_detect(h, y, clll, InnerDetector::Sic, c).symbols, x));
    CHECK(same_symbols(lr_detect(h, y, rlll, InnerDetector::Zf, c).symbols, x));
    CHECK(same_symbols(lr_detect(h, y, rlll, InnerDetector::Sic, c).symbols, x));
  }
}

TEST_CASE("diagonal channel: SIC equals ZF decision for decision") {
  Rng rng(77);
  Constellation c = Constellation::qam(16);
  ComplexMatrix h(3, 3);
  h(0, 0) = cplx(1.2, 0.3);
  h(1, 1) = cplx(-0.4, 0.9);
  h(2, 2) = cplx(0.8, -0.7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> x = random_symbols(c, 3, rng);
    std::vector<cplx> y = h * x;
    for (std::size_t i = 0; i < 3; ++i) y[i] += 0.3 * rng.next_cn01();
    CHECK(same_symbols(detect_zf(h, y, c).symbols, detect_sic(h, y, c).symbols));
  }
}

TEST_CASE("ml detector matches the independent exhaustive scorer") {
  Rng rng(88);
  Constellation c = Constellation::qam(4);
  for (int trial = 0; trial < 300; ++trial) {
    ComplexMatrix h = random_complex(2, 2, rng);
    std::vector<cplx> x = random_symbols(c, 2, rng);
    std::vector<cplx> y = h * x;
    for (auto& v : y) v += 0.8 * rng.next_cn01();
    CHECK(same_symbols(detect_ml(h, y, c).symbols, ml_oracle(h, y, c)));
  }
}

TEST_CASE("ml single-stream picks the nearest scaled point") {
  Rng rng(91);
  Constellation c = Constellation::qam(16);
  ComplexMatrix h(2, 1);
  h(0, 0) = cplx(0.9, -0.2);
  h(1, 0) = cplx(0.1, 0.4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> x = random_symbols(c, 1, rng);
    std::vector<cplx> y = h * x;
    for (auto& v : y) v += 0.2 * rng.next_cn01();
    CHECK(same_symbols(detect_ml(h, y, c).symbols, ml_oracle(h, y, c)));
  }
}

TEST_CASE("ml refuses oversized search spaces") {
  Constellation c = Constellation::qam(256);
  ComplexMatrix h = ComplexMatrix::identity(4);
  std::vector<cplx> y(4, cplx(1.0, 1.0));
  CHECK_THROWS_AS(detect_ml(h, y, c), DimensionError);  // 256^4 > 1e6
}

TEST_CASE("lattice-aided detection with identity reduction collapses to the "
          "inner detector in the integer domain") {
  Rng rng(93);
  Constellation c = Constellation::qam(16);
  ReductionParams rp;
  rp.delta = 0.99;
  for (int trial = 0; trial < 30; ++trial) {
    // orthonormal channel: already reduced, U stays the identity
    ComplexMatrix h = qr_decompose(random_complex(4, 4, rng)).q;
    ReductionOutput red = clll_reduce(h, rp);
    REQUIRE(testutil::max_abs_diff(red.unimodular, ComplexMatrix::identity(4)) == 0.0);
    std::vector<cplx> x = random_symbols(c, 4, rng);
    std::vector<cplx> y = h * x;
    for (auto& v : y) v += 0.05 * rng.next_cn01();
    DetectionResult plain_sic = detect_sic(h, y, c);
    DetectionResult lr_sic = lr_detect(h, y, red, InnerDetector::Sic, c);
    CHECK(same_symbols(plain_sic.symbols, lr_sic.symbols));
    CHECK(lr_sic.pre_clip.size() == 4);
  }
}

TEST_CASE("lr detection rejects mismatched reductions") {
  Rng rng(97);
  Constellation c = Constellation::qam(16);
  ReductionParams rp;
  ComplexMatrix h = random_complex(4, 4, rng);
  ComplexMatrix other = random_complex(3, 3, rng);
  ReductionOutput red = clll_reduce(other, rp);
  std::vector<cplx> y(4, cplx(0.5, 0.5));
  CHECK_THROWS_AS(lr_detect(h, y, red, InnerDetector::Zf, c), DimensionError);
}

TEST_CASE("detector error ordering at moderate noise") {
  // shared channels and noise; ML <= LR-SIC <= LR-ZF <= ZF and ML <= SIC <= ZF
  Rng rng(2024);
  Constellation c = Constellation::qam(4);
  ReductionParams rp;
  rp.delta = 0.99;
  int err_ml = 0, err_lrsic = 0, err_lrzf = 0, err_zf = 0, err_sic = 0;
  const int trials = 1500;
  for (int trial = 0; trial < trials; ++trial) {
    ComplexMatrix h = random_complex(2, 2, rng);
    ReductionOutput red = clll_reduce(h, rp);
    std::vector<cplx> x = random_symbols(c, 2, rng);
    std::vector<cplx> y = h * x;
    for (auto& v : y) v += 0.45 * rng.next_cn01();
    err_ml += !same_symbols(detect_ml(h, y, c).symbols, x);
    err_lrsic += !same_symbols(lr_detect(h, y, red, InnerDetector::Sic, c).symbols, x);
    err_lrzf += !same_symbols(lr_detect(h, y, red, InnerDetector::Zf, c).symbols, x);
    err_sic += !same_symbols(detect_sic(h, y, c).symbols, x);
    err_zf += !same_symbols(detect_zf(h, y, c).symbols, x);
  }
  auto slack = [](int e) { return 3.0 * std::sqrt(2.0 * std::max(e, 25)); };
  CHECK(err_ml <= err_lrsic + slack(err_lrsic));
  CHECK(err_lrsic <= err_lrzf + slack(err_lrzf));
  CHECK(err_lrzf <= err_zf + slack(err_zf));
  CHECK(err_ml <= err_sic + slack(err_sic));
  CHECK(err_sic <= err_zf + slack(err_zf));
}

TEST_CASE("workspace detectors agree with the one-shot entry points") {
  Rng rng(555);
  Constellation c = Constellation::qam(16);
  ReductionParams rp;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    ReductionOutput red = rlll_reduce(h, rp);
    std::vector<cplx> x = random_symbols(c, 4, rng);
    std::vector<cplx> y = h * x;
    for (auto& v : y) v += 0.4 * rng.next_cn01();

    SicWorkspace sic_ws = make_sic_workspace(h, SicOrdering::Vblast);
    CHECK(same_symbols(detect_sic_with(sic_ws, y, c).symbols,
                       detect_sic(h, y, c, SicOrdering::Vblast).symbols));
    LrWorkspace lr_ws = make_lr_workspace(h, red, InnerDetector::Sic, c);
    CHECK(same_symbols(lr_detect_with(lr_ws, y, c).symbols,
                       lr_detect(h, y, red, InnerDetector::Sic, c).symbols));
  }
}
