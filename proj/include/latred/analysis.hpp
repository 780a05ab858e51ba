#pragma once

#include <cstdint>
#include <vector>

#include "latred/enumeration.hpp"
#include "latred/matrix.hpp"
#include "latred/reduction.hpp"

namespace latred {

/// Closed-form worst-case distance-loss bounds of the suboptimal detectors
/// relative to exact ML, on reduced bases with a given delta, together with
/// the corresponding bounds of the doubled-dimension real reduction.
struct ProximityBounds {
  std::size_t n = 0;
  double delta = 0.0;
  double alpha = 0.0;  // 1/(delta - 1/2), >= 2
  double beta = 0.0;   // 1/(delta - 1/4)
  std::vector<double> sic_per_index_min;  // per i: min over j of the refined form
  std::vector<double> sic_per_index_exp;  // per i: alpha^(i-1)
  double sic_bound = 0.0;                 // alpha^(n-1)
  std::vector<double> zf_per_index;       // per i: ((3+2*sqrt 2)/2)^(n-i) alpha^(n-1)
  double zf_bound = 0.0;                  // (((3+2*sqrt 2)/2) alpha)^(n-1)
  /// For n = 2 the two column angles coincide, tightening the ZF bound to
  /// alpha; equals zf_bound otherwise.
  double zf_bound_refined = 0.0;
  double rlll_sic_bound = 0.0;  // beta^(2n-1)
  double rlll_zf_bound = 0.0;   // (9 beta / 4)^(2n-1)
  /// Real-to-complex SIC bound ratio with the -1 exponents dropped:
  /// ((delta-1/2)/(delta-1/4)^2)^n; exactly 1 at delta = 3/4.
  double sic_ratio_approx = 0.0;
  /// Base of the corresponding ZF ratio: (9/4)^2 (delta-1/2) /
  /// (((3+2*sqrt 2)/2) (delta-1/4)^2).
  double zf_ratio_base = 0.0;
};

ProximityBounds proximity_bounds(std::size_t n, double delta);

struct AngleMeasurement {
  std::vector<double> sin_theta;  // acute angle of h_i against span of the rest
  std::vector<double> d_zf;       // ||h_i|| sin(theta_i)
};

/// Angles from the orthogonal residual of each column against the span of the
/// others (QR of the deleted-column matrix). d_zf also equals the reciprocal
/// row norms of the pseudo-inverse.
AngleMeasurement measure_angles(const ComplexMatrix& basis);

/// Numeric check of the geometric-sum inequality underlying the exponential
/// SIC bound: 1 + (alpha^j - alpha) / (2 (alpha - 1)) <= alpha^(j-1).
struct GeometricSumCheckRow {
  double alpha;
  int j;
  double lhs, rhs, margin;
  bool ok;
};
std::vector<GeometricSumCheckRow> verify_appendix_a(const std::vector<double>& alpha_grid,
                                                    int j_max);

/// Certificate for the angle lower bound of one column of a reduced basis:
/// the coefficients of the orthogonal decomposition of h_i against the other
/// columns, their gamma values, and the chained inequalities.
struct BabaiCertificate {
  std::size_t index = 0;  // 0-based column
  std::vector<cplx> coefficients;  // a_t, with a_index = -1
  std::vector<cplx> gamma;         // gamma_j = sum_{t>=j} a_t mu_tj
  double epsilon = 0.0;            // (2/(2+sqrt 2))^(n-1-index)
  double gamma_tail_sq = 0.0;      // sum_{j>=index} |gamma_j|^2
  double sin_theta = 0.0;          // measured
  double sin_theta_lower = 0.0;    // epsilon * alpha^(-(n-1)/2)
  double sum_all_sq = 0.0;         // sum_j |gamma_j|^2 H_j / ||h_i||^2
  double sum_tail_sq = 0.0;        // same, j >= index
  bool tail_ok = false;            // gamma_tail_sq >= epsilon^2
  bool decomposition_ok = false;   // sin^2 >= sum_all_sq (equality holds)
  bool truncation_ok = false;      // sin^2 >= sum_tail_sq
  bool angle_ok = false;           // sin >= sin_theta_lower
  bool ok = false;
};

/// Requires a reduced basis (so |mu| <= sqrt(2)/2). 0-based column index.
BabaiCertificate verify_appendix_b(const ComplexMatrix& reduced_basis, double delta,
                                   std::size_t index);

/// Length/determinant properties of a reduced basis: the Hadamard-type
/// product sandwich, the first-vector bound, and (when the enumeration
/// oracle result is supplied) the successive-minima sandwich with the minima
/// read as squared quantities.
struct BasisPropertyReport {
  double log_det = 0.0;          // log d(L)
  double log_norm_product = 0.0; // log prod ||h_i||
  double product_upper_margin = 0.0;  // alpha^(n(n-1)/4) d - prod (log scale)
  double product_lower_margin = 0.0;  // prod - d (log scale)
  double first_vector_margin = 0.0;   // alpha^((n-1)/4) d^(1/n) - ||h_1|| (log scale)
  bool product_ok = false;
  bool first_vector_ok = false;
  std::size_t minima_checked = 0;
  bool minima_ok = true;  // alpha^(1-n) lambda_i <= ||h_i||^2 <= alpha^(n-1) lambda_i
};
BasisPropertyReport check_basis_properties(const ReductionOutput& reduction, double delta,
                                           const LatticeOracleResult* oracle = nullptr);

/// Monte Carlo record of the worst observed distance-loss ratios over a
/// sample of reduced random bases, next to the analytic bounds (complex
/// dimension <= 3: the enumeration oracle supplies lambda).
struct ProximityEmpirical {
  std::size_t n = 0;
  double delta = 0.0;
  std::uint64_t samples = 0;
  std::vector<double> max_sic_ratio;  // per index: max lambda^2 / H_i
  std::vector<double> max_zf_ratio;   // per index: max lambda^2 / d_zf_i^2
  std::vector<double> sic_bound;      // per-index refined bound
  std::vector<double> zf_bound;       // per-index bound
  std::uint64_t violations = 0;
};
ProximityEmpirical empirical_proximity(std::size_t n, double delta, std::uint64_t trials,
                                       std::uint64_t seed);

}  // namespace latred
