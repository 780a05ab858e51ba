#include "latred/enumeration.hpp"

#include <algorithm>
#include <cmath>

#include "latred/errors.hpp"
#include "latred/linalg.hpp"

namespace latred {

namespace {

struct FoundPoint {
  double norm_sq;
  std::vector<cplx> coeffs;
};

struct Enumerator {
  const GsoState& g;
  std::size_t n;
  bool real_lattice;
  double radius_sq;
  std::vector<cplx> coeffs;   // c_j, filled from level n-1 down
  std::vector<FoundPoint> found;

  // gamma_j = c_j + sum_{t>j} mu_tj c_t; ||v||^2 = sum |gamma_j|^2 norms[j]
  void descend(std::size_t level, double partial_norm_sq) {
    const std::size_t j = level - 1;
    cplx shift{0.0, 0.0};
    for (std::size_t t = j + 1; t < n; ++t) shift += g.mu(t, j) * coeffs[t];

    double budget = radius_sq * (1.0 + 1e-12) - partial_norm_sq;
    if (budget < 0.0) return;
    double rad = std::sqrt(budget / g.norms_sq[j]);

    long re_lo = static_cast<long>(std::ceil(-rad - shift.real() - 1e-12));
    long re_hi = static_cast<long>(std::floor(rad - shift.real() + 1e-12));
    for (long re = re_lo; re <= re_hi; ++re) {
      long im_lo = 0, im_hi = 0;
      if (!real_lattice) {
        double re_part = static_cast<double>(re) + shift.real();
        double rem = rad * rad - re_part * re_part;
        if (rem < 0.0) rem = 0.0;
        double imrad = std::sqrt(rem);
        im_lo = static_cast<long>(std::ceil(-imrad - shift.imag() - 1e-12));
        im_hi = static_cast<long>(std::floor(imrad - shift.imag() + 1e-12));
      }
      for (long im = im_lo; im <= im_hi; ++im) {
        cplx c{static_cast<double>(re), static_cast<double>(im)};
        cplx gamma = c + shift;
        double contrib = std::norm(gamma) * g.norms_sq[j];
        double total = partial_norm_sq + contrib;
        if (total > radius_sq * (1.0 + 1e-12)) continue;
        coeffs[j] = c;
        if (j == 0) {
          bool nonzero = false;
          for (const cplx& z : coeffs)
            if (z != cplx{0.0, 0.0}) {
              nonzero = true;
              break;
            }
          if (nonzero) found.push_back({total, coeffs});
        } else {
          descend(level - 1, total);
        }
      }
    }
    coeffs[j] = cplx{0.0, 0.0};
  }
};

bool coeff_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

}  // namespace

LatticeOracleResult shortest_vector_bruteforce(const ComplexMatrix& basis,
                                               double radius_mult) {
  if (radius_mult < 1.0)
    throw ConfigError("shortest_vector_bruteforce: radius_mult must be >= 1");
  const bool real_lattice = is_real_valued(basis);
  const std::size_t n = basis.cols();
  if ((real_lattice && n > 6) || (!real_lattice && n > 3))
    throw DimensionError("shortest_vector_bruteforce: dimension too large (max 3 "
                         "complex / 6 real)");

  GsoState g = gso(basis);  // rank check included

  double min_col_sq = column_norm_sq(basis, 0);
  for (std::size_t j = 1; j < n; ++j)
    min_col_sq = std::min(min_col_sq, column_norm_sq(basis, j));

  Enumerator en{g, n, real_lattice, radius_mult * radius_mult * min_col_sq,
                std::vector<cplx>(n, cplx{0.0, 0.0}), {}};
  en.descend(n, 0.0);

  if (en.found.empty())
    throw Error("shortest_vector_bruteforce: empty enumeration (bug)");

  std::sort(en.found.begin(), en.found.end(), [](const FoundPoint& a, const FoundPoint& b) {
    if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
    return coeff_less(a.coeffs, b.coeffs);
  });

  // Greedy pick of linearly independent witnesses in norm order; independence
  // over the complex field, tested by Gram-Schmidt residual.
  LatticeOracleResult result;
  result.shortest_norm_sq = en.found.front().norm_sq;
  std::vector<std::vector<cplx>> ortho;  // orthogonalized picked vectors (length m)
  const std::size_t m = basis.rows();
  for (const FoundPoint& p : en.found) {
    if (result.successive_minima_sq.size() == n) break;
    std::vector<cplx> v(m, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) v[i] += basis(i, j) * p.coeffs[j];
    double vnorm = 0.0;
    for (const cplx& z : v) vnorm += std::norm(z);
    std::vector<cplx> r = v;
    for (const std::vector<cplx>& q : ortho) {
      cplx ip{0.0, 0.0};
      double qn = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        ip += std::conj(q[i]) * r[i];
        qn += std::norm(q[i]);
      }
      cplx f = ip / qn;
      for (std::size_t i = 0; i < m; ++i) r[i] -= f * q[i];
    }
    double rnorm = 0.0;
    for (const cplx& z : r) rnorm += std::norm(z);
    if (rnorm > 1e-9 * vnorm) {
      ortho.push_back(r);
      result.successive_minima_sq.push_back(p.norm_sq);
      result.witness_coeffs.push_back(p.coeffs);
    }
  }
  return result;
}

}  // namespace latred
