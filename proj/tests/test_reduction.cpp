#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "latred/enumeration.hpp"
#include "latred/errors.hpp"
#include "latred/reduction.hpp"
#include "latred/rng.hpp"
#include "test_util.hpp"

using namespace latred;
using testutil::direct_gso;
using testutil::random_complex;

namespace {

bool is_gaussian_integer_matrix(const ComplexMatrix& u, double tol = 1e-9) {
  for (std::size_t j = 0; j < u.cols(); ++j)
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const cplx& z = u(i, j);
      if (std::fabs(z.real() - std::round(z.real())) > tol) return false;
      if (std::fabs(z.imag() - std::round(z.imag())) > tol) return false;
    }
  return true;
}

double gram_log_det(const ComplexMatrix& h) { return 2.0 * log_lattice_determinant(h); }

}  // namespace

TEST_CASE("already-reduced identity passes through untouched") {
  ReductionParams p;
  p.delta = 0.75;
  ReductionOutput out = clll_reduce(ComplexMatrix::identity(4), p);
  CHECK(out.swap_count == 0);
  CHECK(out.size_reduce_count == 0);
  CHECK(testutil::max_abs_diff(out.reduced_basis, ComplexMatrix::identity(4)) == 0.0);
  CHECK(testutil::max_abs_diff(out.unimodular, ComplexMatrix::identity(4)) == 0.0);
  // only the orthogonalization phase did arithmetic
  CHECK(out.tally.region_count(Region::SizeReduce) == 0);
  CHECK(out.tally.region_count(Region::Swap) == 0);
}

TEST_CASE("delta = 1 on a 2-D basis gives the two-vector reduction properties") {
  ReductionParams p;
  p.delta = 1.0;
  p.allow_delta_one = true;
  ComplexMatrix h(2, 2);
  h(0, 0) = 1.0;
  h(1, 0) = 0.0;
  h(0, 1) = cplx(0.5, 0.5);
  h(1, 1) = cplx(0.01, 0.0);
  ReductionOutput out = clll_reduce(h, p);
  GsoState g = gso(out.reduced_basis);
  CHECK(std::fabs(g.mu(1, 0).real()) <= 0.5 + 1e-9);
  CHECK(std::fabs(g.mu(1, 0).imag()) <= 0.5 + 1e-9);
  CHECK(g.norms_sq[0] <= g.norms_sq[1] * (1.0 + 1e-9));
}

TEST_CASE("delta = 1 requires the explicit flag") {
  ReductionParams p;
  p.delta = 1.0;
  CHECK_THROWS_AS(clll_reduce(ComplexMatrix::identity(2), p), ConfigError);
  p.delta = 0.4;
  CHECK_THROWS_AS(clll_reduce(ComplexMatrix::identity(2), p), ConfigError);
}

TEST_CASE("reduction output invariants on random bases") {
  Rng rng(101);
  ReductionParams p;
  p.delta = 0.99;
  for (int trial = 0; trial < 200; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    ReductionOutput out = clll_reduce(h, p);

    // H' = H U
    CHECK(testutil::rel_frob_err(h * out.unimodular, out.reduced_basis) < 1e-9);
    // U is a Gaussian-integer matrix with unit-modulus determinant
    CHECK(is_gaussian_integer_matrix(out.unimodular));
    CHECK(std::abs(determinant(out.unimodular)) == doctest::Approx(1.0).epsilon(1e-6));
    // lattice preserved
    CHECK(gram_log_det(out.reduced_basis) ==
          doctest::Approx(gram_log_det(h)).epsilon(1e-6));
    // reduction conditions hold
    CHECK(is_clll_reduced(out.reduced_basis, p.delta).reduced);
    // the incremental state matches a from-scratch orthogonalization
    testutil::DirectGso d = direct_gso(out.reduced_basis);
    CHECK(testutil::gso_state_diff(out.gso, d.mu, d.norms_sq) < 1e-9);
  }
}

TEST_CASE("reduction improves the orthogonality defect on average") {
  // Instance-wise monotonicity is not guaranteed (a deep size reduction can
  // nudge earlier cross terms up); the distribution improves sharply and
  // exceptions stay small and rare.
  Rng rng(211);
  ReductionParams p;
  p.delta = 0.99;
  double sum_raw = 0.0, sum_red = 0.0;
  int exceptions = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    ReductionOutput out = clll_reduce(h, p);
    double raw = orthogonality_defect(h);
    double red = orthogonality_defect(out.reduced_basis);
    sum_raw += raw;
    sum_red += red;
    if (red > raw * (1.0 + 1e-9)) {
      ++exceptions;
      CHECK(red <= raw * 1.5);
    }
  }
  CHECK(sum_red < 0.5 * sum_raw);
  CHECK(exceptions <= trials / 50);
}

TEST_CASE("inverse of the unimodular matrix is a Gaussian-integer matrix") {
  Rng rng(103);
  ReductionParams p;
  p.delta = 0.99;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    ReductionOutput out = clll_reduce(h, p);
    ComplexMatrix inv = pseudo_inverse(out.unimodular);
    ComplexMatrix rounded(inv.rows(), inv.cols());
    for (std::size_t j = 0; j < inv.cols(); ++j)
      for (std::size_t i = 0; i < inv.rows(); ++i)
        rounded(i, j) = cplx(std::round(inv(i, j).real()), std::round(inv(i, j).imag()));
    CHECK(testutil::max_abs_diff(inv, rounded) < 1e-6);
    CHECK(testutil::max_abs_diff(out.unimodular * rounded,
                                 ComplexMatrix::identity(4)) < 1e-6);
  }
}

TEST_CASE("potential trace contracts by at least delta per swap") {
  Rng rng(107);
  ReductionParams p;
  p.delta = 0.75;
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix h = random_complex(5, 5, rng);
    ReductionOutput out = clll_reduce(h, p);
    REQUIRE(out.potential_trace.size() == out.swap_count + 1);
    for (std::size_t s = 1; s < out.potential_trace.size(); ++s) {
      double ratio = out.potential_trace[s] / out.potential_trace[s - 1];
      CHECK(ratio <= p.delta * (1.0 + 1e-9));
      CHECK(ratio > 0.0);
    }
    // swap-count bound from the total contraction
    double total = out.potential_trace.front() / out.potential_trace.back();
    double bound = std::log(total) / std::log(1.0 / p.delta) + 5.0;
    CHECK(static_cast<double>(out.swap_count) <= bound + 1e-6);
  }
}

TEST_CASE("size_reduce single steps") {
  // rounding to zero is a no-op
  {
    ComplexMatrix h(2, 2);
    h(0, 0) = 1.0;
    h(1, 0) = 0.0;
    h(0, 1) = cplx(0.3, 0.2);
    h(1, 1) = 1.0;
    ComplexMatrix u = ComplexMatrix::identity(2);
    GsoState g = gso(h);
    ComplexMatrix h_before = h;
    size_reduce(h, u, g, 1, 0);
    CHECK(testutil::max_abs_diff(h, h_before) == 0.0);
    CHECK(testutil::max_abs_diff(u, ComplexMatrix::identity(2)) == 0.0);
  }
  // integer coefficient subtracts exactly once
  {
    ComplexMatrix h(2, 2);
    h(0, 0) = 1.0;
    h(1, 0) = 0.0;
    h(0, 1) = 1.0;
    h(1, 1) = 1.0;
    ComplexMatrix u = ComplexMatrix::identity(2);
    GsoState g = gso(h);
    CHECK(g.mu(1, 0).real() == doctest::Approx(1.0));
    size_reduce(h, u, g, 1, 0);
    CHECK(h(0, 1) == cplx(0.0, 0.0));
    CHECK(h(1, 1) == cplx(1.0, 0.0));
    CHECK(u(0, 1) == cplx(-1.0, 0.0));
  }
  // complex rounding against the full re-orthogonalization oracle
  {
    Rng rng(109);
    ComplexMatrix h = random_complex(3, 3, rng);
    // push mu(2,1) to exactly 0.7 - 1.4i by adding a multiple of h_1* to h_2
    GsoState g0 = gso(h);
    cplx target(0.7, -1.4);
    cplx adjust = target - g0.mu(2, 1);
    for (std::size_t i = 0; i < 3; ++i) {
      cplx h1star = h(i, 1) - g0.mu(1, 0) * h(i, 0);
      h(i, 2) += adjust * h1star;
    }
    GsoState g = gso(h);
    CHECK(g.mu(2, 1).real() == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(g.mu(2, 1).imag() == doctest::Approx(-1.4).epsilon(1e-9));
    ComplexMatrix u = ComplexMatrix::identity(3);
    ComplexMatrix h_before = h;
    size_reduce(h, u, g, 2, 1);
    // c = round(0.7 - 1.4i) = 1 - i
    CHECK(u(1, 2) == cplx(-1.0, 1.0));
    CHECK(testutil::rel_frob_err(h_before * u, h) < 1e-12);
    CHECK(std::fabs(g.mu(2, 1).real()) <= 0.5 + 1e-9);
    CHECK(std::fabs(g.mu(2, 1).imag()) <= 0.5 + 1e-9);
    testutil::DirectGso d = direct_gso(h);
    CHECK(testutil::gso_state_diff(g, d.mu, d.norms_sq) < 1e-9);
  }
}

TEST_CASE("swap_update single steps") {
  // 2-D: new first norm = H_2 + |mu|^2 H_1
  {
    Rng rng(113);
    ComplexMatrix h = random_complex(2, 2, rng);
    GsoState g = gso(h);
    double h0 = g.norms_sq[0], h1 = g.norms_sq[1];
    double musq = std::norm(g.mu(1, 0));
    ComplexMatrix u = ComplexMatrix::identity(2);
    swap_update(h, u, g, 1);
    CHECK(g.norms_sq[0] == doctest::Approx(h1 + musq * h0).epsilon(1e-12));
    testutil::DirectGso d = direct_gso(h);
    CHECK(testutil::gso_state_diff(g, d.mu, d.norms_sq) < 1e-9);
  }
  // orthogonal columns: swap exchanges the norms, mu stays zero
  {
    ComplexMatrix h(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 3.0;
    GsoState g = gso(h);
    ComplexMatrix u = ComplexMatrix::identity(2);
    swap_update(h, u, g, 1);
    CHECK(g.norms_sq[0] == doctest::Approx(9.0));
    CHECK(g.norms_sq[1] == doctest::Approx(4.0));
    CHECK(std::abs(g.mu(1, 0)) == doctest::Approx(0.0));
  }
  // random 5x5, forced swap in the middle, against the re-GSO oracle
  {
    Rng rng(127);
    for (int trial = 0; trial < 20; ++trial) {
      ComplexMatrix h = random_complex(5, 5, rng);
      GsoState g = gso(h);
      ComplexMatrix u = ComplexMatrix::identity(5);
      ComplexMatrix h_before = h;
      swap_update(h, u, g, 2);
      testutil::DirectGso d = direct_gso(h);
      CHECK(testutil::gso_state_diff(g, d.mu, d.norms_sq) < 1e-9);
      CHECK(testutil::rel_frob_err(h_before * u, h) < 1e-12);
    }
  }
}

TEST_CASE("traced reduction keeps incremental state consistent at every step") {
  Rng rng(131);
  ReductionParams p;
  p.delta = 0.99;
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    std::size_t steps = 0;
    double worst = 0.0;
    StepObserver obs = [&](const ReductionStep&, const ComplexMatrix& basis,
                           const ComplexMatrix&, const GsoState& g) {
      testutil::DirectGso d = direct_gso(basis);
      worst = std::max(worst, testutil::gso_state_diff(g, d.mu, d.norms_sq));
      ++steps;
    };
    ReductionOutput out = clll_reduce(h, p, CostModel::standard(), obs);
    CHECK(steps == out.swap_count + out.size_reduce_count);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("real-path reduction on an already-real basis") {
  ReductionParams p;
  p.delta = 0.75;
  ReductionOutput out = rlll_reduce(ComplexMatrix::identity(4), p);
  CHECK(out.real_embedded);
  CHECK(out.swap_count == 0);
  CHECK(out.reduced_basis.rows() == 4);  // no dimension doubling for real input
  CHECK(testutil::max_abs_diff(out.reduced_basis, ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("real-path reduction embeds complex input") {
  Rng rng(137);
  ReductionParams p;
  p.delta = 0.99;
  ComplexMatrix h = random_complex(2, 2, rng);
  ReductionOutput out = rlll_reduce(h, p);
  CHECK(out.real_embedded);
  CHECK(out.reduced_basis.rows() == 4);
  CHECK(out.reduced_basis.cols() == 4);
  CHECK(is_real_valued(out.reduced_basis));
  ReductionCheck check = is_clll_reduced(out.reduced_basis, p.delta);
  CHECK(check.reduced);  // imaginary size condition is vacuous on real data
  CHECK(testutil::rel_frob_err(real_embed(h) * out.unimodular, out.reduced_basis) <
        1e-9);
  // real flop events only
  CHECK(out.tally.event_count(FlopEvent::ComplexMul) == 0);
  CHECK(out.tally.event_count(FlopEvent::ComplexAdd) == 0);
  CHECK(out.tally.event_count(FlopEvent::RealMul) > 0);
}

TEST_CASE("reduction predicate reports violations") {
  CHECK(is_clll_reduced(ComplexMatrix::identity(3), 0.75).reduced);
  ComplexMatrix h(2, 2);
  h(0, 0) = 1.0;
  h(1, 0) = 0.0;
  h(0, 1) = 0.6;
  h(1, 1) = 1.0;
  ReductionCheck check = is_clll_reduced(h, 0.75);
  CHECK(!check.reduced);
  REQUIRE(check.size_violations.size() == 1);
  CHECK(check.size_violations[0].i == 1);
  CHECK(check.size_violations[0].j == 0);
}

TEST_CASE("orthogonality defect") {
  ComplexMatrix diag(2, 2);
  diag(0, 0) = 2.0;
  diag(1, 1) = 0.5;
  CHECK(orthogonality_defect(diag) == doctest::Approx(1.0));

  Rng rng(139);
  ReductionParams p;
  p.delta = 0.75;
  double alpha = 1.0 / (p.delta - 0.5);  // 4
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix h = random_complex(4, 4, rng);
    ReductionOutput out = clll_reduce(h, p);
    double n = 4.0;
    CHECK(orthogonality_defect(out.reduced_basis) <=
          std::pow(alpha, n * (n - 1.0) / 4.0) * (1.0 + 1e-9));
  }
}

TEST_CASE("shortest vector oracle on hand-checkable lattices") {
  {
    LatticeOracleResult r = shortest_vector_bruteforce(ComplexMatrix::identity(2));
    CHECK(r.shortest_norm_sq == doctest::Approx(1.0));
    REQUIRE(!r.witness_coeffs.empty());
    double wn = 0.0;
    for (const cplx& z : r.witness_coeffs[0]) wn += std::norm(z);
    CHECK(wn == doctest::Approx(1.0));  // a unit coefficient vector
    REQUIRE(r.successive_minima_sq.size() == 2);
    CHECK(r.successive_minima_sq[0] == doctest::Approx(1.0));
    CHECK(r.successive_minima_sq[1] == doctest::Approx(1.0));
  }
  {
    ComplexMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 3.0;
    LatticeOracleResult r = shortest_vector_bruteforce(d, 3.01);
    REQUIRE(r.successive_minima_sq.size() == 2);
    CHECK(r.successive_minima_sq[0] == doctest::Approx(1.0));
    CHECK(r.successive_minima_sq[1] == doctest::Approx(9.0));
  }
}

TEST_CASE("oracle witnesses achieve their reported norms") {
  Rng rng(149);
  ReductionParams p;
  p.delta = 0.99;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix h = random_complex(3, 3, rng);
    ReductionOutput out = clll_reduce(h, p);
    LatticeOracleResult r = shortest_vector_bruteforce(out.reduced_basis);
    for (std::size_t w = 0; w < r.witness_coeffs.size(); ++w) {
      std::vector<cplx> v = out.reduced_basis * r.witness_coeffs[w];
      double nsq = 0.0;
      for (const cplx& z : v) nsq += std::norm(z);
      CHECK(nsq == doctest::Approx(r.successive_minima_sq[w]).epsilon(1e-9));
    }
  }
}

TEST_CASE("first reduced vector is within the guaranteed factor of the minimum") {
  Rng rng(151);
  ReductionParams p;
  p.delta = 0.75;
  double alpha = 4.0;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix h = random_complex(2, 2, rng);
    ReductionOutput out = clll_reduce(h, p);
    LatticeOracleResult r = shortest_vector_bruteforce(out.reduced_basis);
    double h1_sq = column_norm_sq(out.reduced_basis, 0);
    CHECK(h1_sq / r.shortest_norm_sq <= alpha * (1.0 + 1e-9));
  }
}

TEST_CASE("oracle refuses oversized inputs") {
  ComplexMatrix four = ComplexMatrix::identity(4);
  four(0, 0) = cplx(1.0, 0.25);  // genuinely complex: the 3-column limit applies
  CHECK_THROWS_AS(shortest_vector_bruteforce(four), DimensionError);
  Rng rng(157);
  RealMatrix big_r(8, 8);
  for (std::size_t j = 0; j < 8; ++j)
    for (std::size_t i = 0; i < 8; ++i) big_r(i, j) = rng.next_gaussian();
  ComplexMatrix big = to_complex(big_r);
  CHECK_THROWS_AS(shortest_vector_bruteforce(big), DimensionError);
}

TEST_CASE("reducer rejects rank-deficient input") {
  ComplexMatrix h(2, 2);
  h(0, 0) = 1.0;
  h(1, 0) = 1.0;
  h(0, 1) = 2.0;
  h(1, 1) = 2.0;
  CHECK_THROWS_AS(clll_reduce(h), RankError);
}

TEST_CASE("iteration cap reports non-convergence instead of truncating") {
  // a deliberately stretched basis needs far more loop passes than a
  // crippled cap allows; the reducer must refuse loudly
  Rng rng(163);
  const std::size_t n = 12;
  ComplexMatrix h = random_complex(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    double scale = std::pow(10.0, 5.0 * static_cast<double>(n - 1 - j) /
                                      static_cast<double>(n - 1));
    for (std::size_t i = 0; i < n; ++i) h(i, j) *= scale;
  }
  ReductionParams p;
  p.delta = 0.99;
  p.cap_scale = 1e-9;  // cap collapses to the additive floor
  CHECK_THROWS_AS(clll_reduce(h, p), ConvergenceError);
  // with the default cap the same basis reduces fine
  ReductionParams ok;
  ok.delta = 0.99;
  ReductionOutput out = clll_reduce(h, ok);
  CHECK(is_clll_reduced(out.reduced_basis, ok.delta).reduced);
}
