#include "latred/analysis.hpp"

#include <cmath>
#include <limits>

#include "latred/errors.hpp"
#include "latred/linalg.hpp"
#include "latred/rng.hpp"

namespace latred {

namespace {

constexpr double kZfGeomFactor = 2.9142135623730951;  // (3 + 2 sqrt 2) / 2

void check_delta(double delta) {
  if (!(delta > 0.5) || delta > 1.0)
    throw ConfigError("delta must satisfy 1/2 < delta <= 1");
}

}  // namespace

ProximityBounds proximity_bounds(std::size_t n, double delta) {
  check_delta(delta);
  if (n < 1) throw ConfigError("proximity_bounds: n >= 1");
  ProximityBounds b;
  b.n = n;
  b.delta = delta;
  b.alpha = 1.0 / (delta - 0.5);
  b.beta = 1.0 / (delta - 0.25);
  const double a = b.alpha;
  b.sic_per_index_min.resize(n);
  b.sic_per_index_exp.resize(n);
  b.zf_per_index.resize(n);
  for (std::size_t i1 = 1; i1 <= n; ++i1) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j1 = 1; j1 <= i1; ++j1) {
      double head = 1.0 + 0.5 * (std::pow(a, static_cast<double>(j1)) - a) / (a - 1.0);
      double v = head * std::pow(a, static_cast<double>(i1 - j1));
      best = std::min(best, v);
    }
    b.sic_per_index_min[i1 - 1] = best;
    b.sic_per_index_exp[i1 - 1] = std::pow(a, static_cast<double>(i1 - 1));
    b.zf_per_index[i1 - 1] = std::pow(kZfGeomFactor, static_cast<double>(n - i1)) *
                             std::pow(a, static_cast<double>(n - 1));
  }
  b.sic_bound = std::pow(a, static_cast<double>(n - 1));
  b.zf_bound = std::pow(kZfGeomFactor * a, static_cast<double>(n - 1));
  b.zf_bound_refined = (n == 2) ? a : b.zf_bound;
  b.rlll_sic_bound = std::pow(b.beta, static_cast<double>(2 * n - 1));
  b.rlll_zf_bound = std::pow(2.25 * b.beta, static_cast<double>(2 * n - 1));
  double dm = delta - 0.25;
  b.sic_ratio_approx = std::pow((delta - 0.5) / (dm * dm), static_cast<double>(n));
  b.zf_ratio_base = (2.25 * 2.25) * (delta - 0.5) / (kZfGeomFactor * dm * dm);
  return b;
}

AngleMeasurement measure_angles(const ComplexMatrix& basis) {
  const std::size_t m = basis.rows();
  const std::size_t n = basis.cols();
  if (n < 2) throw DimensionError("measure_angles: need at least two columns");
  AngleMeasurement out;
  out.sin_theta.resize(n);
  out.d_zf.resize(n);
  for (std::size_t drop = 0; drop < n; ++drop) {
    ComplexMatrix rest(m, n - 1);
    std::size_t cidx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == drop) continue;
      for (std::size_t i = 0; i < m; ++i) rest(i, cidx) = basis(i, j);
      ++cidx;
    }
    QrResult f = qr_decompose(rest);
    // residual r = h - Q (Q^H h)
    std::vector<cplx> h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = basis(i, drop);
    std::vector<cplx> coeff = kernels::adjoint_apply(f.q, h, {});
    std::vector<cplx> r = h;
    for (std::size_t j = 0; j < f.q.cols(); ++j)
      for (std::size_t i = 0; i < m; ++i) r[i] -= f.q(i, j) * coeff[j];
    double rn = 0.0, hn = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      rn += std::norm(r[i]);
      hn += std::norm(h[i]);
    }
    out.sin_theta[drop] = std::sqrt(rn / hn);
    out.d_zf[drop] = std::sqrt(rn);
  }
  return out;
}

std::vector<GeometricSumCheckRow> verify_appendix_a(const std::vector<double>& alpha_grid,
                                                    int j_max) {
  std::vector<GeometricSumCheckRow> rows;
  rows.reserve(alpha_grid.size() * static_cast<std::size_t>(j_max));
  for (double a : alpha_grid) {
    for (int j = 1; j <= j_max; ++j) {
      double lhs = 1.0 + 0.5 * (std::pow(a, j) - a) / (a - 1.0);
      double rhs = std::pow(a, j - 1);
      double margin = rhs - lhs;
      rows.push_back({a, j, lhs, rhs, margin, lhs <= rhs * (1.0 + 1e-12)});
    }
  }
  return rows;
}

BabaiCertificate verify_appendix_b(const ComplexMatrix& reduced_basis, double delta,
                                   std::size_t index) {
  check_delta(delta);
  const std::size_t m = reduced_basis.rows();
  const std::size_t n = reduced_basis.cols();
  if (index >= n) throw DimensionError("verify_appendix_b: index out of range");
  const double alpha = 1.0 / (delta - 0.5);
  const double contraction = 2.0 / (2.0 + std::sqrt(2.0));

  GsoState g = gso(reduced_basis);

  BabaiCertificate cert;
  cert.index = index;
  cert.coefficients.assign(n, cplx{0.0, 0.0});
  cert.coefficients[index] = cplx{-1.0, 0.0};
  if (n >= 2) {
    // expansion of the projection of h_index onto the span of the others
    ComplexMatrix rest(m, n - 1);
    std::size_t cidx = 0;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == index) continue;
      cols.push_back(j);
      for (std::size_t i = 0; i < m; ++i) rest(i, cidx) = reduced_basis(i, j);
      ++cidx;
    }
    ComplexMatrix pinv = pseudo_inverse(rest);
    std::vector<cplx> h(m);
    for (std::size_t i = 0; i < m; ++i) h[i] = reduced_basis(i, index);
    std::vector<cplx> coeff = pinv * h;
    for (std::size_t j = 0; j + 1 < n; ++j) cert.coefficients[cols[j]] = coeff[j];
  }

  cert.gamma.assign(n, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    cplx gj = cert.coefficients[j];  // mu_jj = 1
    for (std::size_t t = j + 1; t < n; ++t) gj += cert.coefficients[t] * g.mu(t, j);
    cert.gamma[j] = gj;
  }

  cert.epsilon = std::pow(contraction, static_cast<double>(n - 1 - index));
  for (std::size_t j = index; j < n; ++j) cert.gamma_tail_sq += std::norm(cert.gamma[j]);

  double h_norm_sq = column_norm_sq(reduced_basis, index);
  double sum_all = 0.0, sum_tail = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double term = std::norm(cert.gamma[j]) * g.norms_sq[j];
    sum_all += term;
    if (j >= index) sum_tail += term;
  }
  cert.sum_all_sq = sum_all / h_norm_sq;
  cert.sum_tail_sq = sum_tail / h_norm_sq;

  if (n >= 2) {
    AngleMeasurement angles = measure_angles(reduced_basis);
    cert.sin_theta = angles.sin_theta[index];
  } else {
    cert.sin_theta = 1.0;
  }
  cert.sin_theta_lower =
      cert.epsilon * std::pow(alpha, -0.5 * static_cast<double>(n - 1));

  constexpr double tol = 1e-9;
  double sin_sq = cert.sin_theta * cert.sin_theta;
  cert.tail_ok = cert.gamma_tail_sq >= cert.epsilon * cert.epsilon * (1.0 - 1e-9);
  cert.decomposition_ok = sin_sq >= cert.sum_all_sq - tol;
  cert.truncation_ok = sin_sq >= cert.sum_tail_sq - tol;
  cert.angle_ok = cert.sin_theta >= cert.sin_theta_lower * (1.0 - 1e-9);
  cert.ok = cert.tail_ok && cert.decomposition_ok && cert.truncation_ok && cert.angle_ok;
  return cert;
}

BasisPropertyReport check_basis_properties(const ReductionOutput& reduction, double delta,
                                           const LatticeOracleResult* oracle) {
  check_delta(delta);
  const ComplexMatrix& h = reduction.reduced_basis;
  const std::size_t n = h.cols();
  const double alpha = 1.0 / (delta - 0.5);
  const double log_alpha = std::log(alpha);

  BasisPropertyReport rep;
  rep.log_det = log_lattice_determinant(h);
  for (std::size_t j = 0; j < n; ++j)
    rep.log_norm_product += 0.5 * std::log(column_norm_sq(h, j));

  double nn = static_cast<double>(n);
  rep.product_lower_margin = rep.log_norm_product - rep.log_det;
  rep.product_upper_margin =
      (nn * (nn - 1.0) / 4.0) * log_alpha + rep.log_det - rep.log_norm_product;
  rep.product_ok = rep.product_lower_margin >= -1e-9 && rep.product_upper_margin >= -1e-9;

  double log_h1 = 0.5 * std::log(column_norm_sq(h, 0));
  rep.first_vector_margin =
      ((nn - 1.0) / 4.0) * log_alpha + rep.log_det / nn - log_h1;
  rep.first_vector_ok = rep.first_vector_margin >= -1e-9;

  if (oracle != nullptr) {
    std::size_t count = std::min(oracle->successive_minima_sq.size(), n);
    rep.minima_checked = count;
    for (std::size_t i = 0; i < count; ++i) {
      double lam = oracle->successive_minima_sq[i];  // squared minimum
      double hsq = column_norm_sq(h, i);
      double low = std::pow(alpha, 1.0 - nn) * lam;
      double high = std::pow(alpha, nn - 1.0) * lam;
      if (!(hsq >= low * (1.0 - 1e-9) && hsq <= high * (1.0 + 1e-9))) rep.minima_ok = false;
    }
  }
  return rep;
}

ProximityEmpirical empirical_proximity(std::size_t n, double delta, std::uint64_t trials,
                                       std::uint64_t seed) {
  check_delta(delta);
  if (n > 3)
    throw DimensionError("empirical_proximity: enumeration oracle limited to n <= 3");
  ProximityBounds bounds = proximity_bounds(n, delta);
  ProximityEmpirical emp;
  emp.n = n;
  emp.delta = delta;
  emp.max_sic_ratio.assign(n, 0.0);
  emp.max_zf_ratio.assign(n, 0.0);
  emp.sic_bound = bounds.sic_per_index_min;
  emp.zf_bound = bounds.zf_per_index;

  ReductionParams params;
  params.delta = delta;
  params.allow_delta_one = true;
  params.count_flops = false;

  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 0x70726f78ULL, t);
    ComplexMatrix h(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) h(i, j) = rng.next_cn01();
    ReductionOutput red = clll_reduce(h, params);
    LatticeOracleResult oracle = shortest_vector_bruteforce(red.reduced_basis);
    double lam = oracle.shortest_norm_sq;
    AngleMeasurement angles =
        n >= 2 ? measure_angles(red.reduced_basis) : AngleMeasurement{{1.0}, {1.0}};
    GsoState g = red.gso;
    for (std::size_t i = 0; i < n; ++i) {
      double sic_ratio = lam / g.norms_sq[i];
      double dzf = n >= 2 ? angles.d_zf[i] : std::sqrt(column_norm_sq(red.reduced_basis, i));
      double zf_ratio = lam / (dzf * dzf);
      emp.max_sic_ratio[i] = std::max(emp.max_sic_ratio[i], sic_ratio);
      emp.max_zf_ratio[i] = std::max(emp.max_zf_ratio[i], zf_ratio);
      if (sic_ratio > emp.sic_bound[i] * (1.0 + 1e-9)) ++emp.violations;
      if (zf_ratio > emp.zf_bound[i] * (1.0 + 1e-9)) ++emp.violations;
    }
    ++emp.samples;
  }
  return emp;
}

}  // namespace latred
