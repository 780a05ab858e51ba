#pragma once

#include <cmath>
#include <vector>

#include "latred/linalg.hpp"
#include "latred/matrix.hpp"
#include "latred/rng.hpp"

namespace testutil {

using latred::ComplexMatrix;
using latred::cplx;

inline ComplexMatrix random_complex(std::size_t m, std::size_t n, latred::Rng& rng) {
  ComplexMatrix h(m, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) h(i, j) = rng.next_cn01();
  return h;
}

// Projection-subtraction orthogonalization with explicit orthogonal vectors;
// independent of the recurrence-based implementation it checks.
struct DirectGso {
  std::vector<std::vector<cplx>> ortho;  // h_j* as explicit vectors
  ComplexMatrix mu;
  std::vector<double> norms_sq;
};

inline DirectGso direct_gso(const ComplexMatrix& h) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  DirectGso g{{}, ComplexMatrix(n, n), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = h(i, j);
    for (std::size_t k = 0; k < j; ++k) {
      cplx ip{0.0, 0.0};
      for (std::size_t i = 0; i < m; ++i) ip += std::conj(g.ortho[k][i]) * h(i, j);
      cplx mu = ip / g.norms_sq[k];
      g.mu(j, k) = mu;
      for (std::size_t i = 0; i < m; ++i) v[i] -= mu * g.ortho[k][i];
    }
    double nsq = 0.0;
    for (const cplx& z : v) nsq += std::norm(z);
    g.norms_sq[j] = nsq;
    g.ortho.push_back(std::move(v));
  }
  return g;
}

inline ComplexMatrix gram(const ComplexMatrix& h) {
  return h.transposed_conj() * h;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

inline double rel_frob_err(const ComplexMatrix& got, const ComplexMatrix& want) {
  return latred::frobenius_norm(got - want) / latred::frobenius_norm(want);
}

// mu/norm agreement between an incremental state and a from-scratch oracle
inline double gso_state_diff(const latred::GsoState& a, const ComplexMatrix& mu_b,
                             const std::vector<double>& norms_b) {
  double worst = 0.0;
  const std::size_t n = a.norms_sq.size();
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst,
                     std::abs(a.norms_sq[i] - norms_b[i]) / std::max(1e-300, norms_b[i]));
    for (std::size_t j = 0; j < i; ++j)
      worst = std::max(worst, std::abs(a.mu(i, j) - mu_b(i, j)));
  }
  return worst;
}

}  // namespace testutil
