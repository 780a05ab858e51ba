#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latred/flops.hpp"
#include "latred/linalg.hpp"
#include "latred/matrix.hpp"

namespace latred {

struct ReductionParams {
  /// Quality/speed factor of the Lovasz condition; 1/2 < delta < 1, or
  /// delta = 1 when allow_delta_one is set (convergence then has no
  /// polynomial guarantee; the iteration cap still applies).
  double delta = 0.99;
  bool allow_delta_one = false;
  bool count_flops = true;
  /// Iteration cap = 100 + cap_scale * n^2 * max(1, log2(B / lambda_est)),
  /// with B the largest initial column norm and lambda_est the smallest
  /// initial GSO norm. Hitting the cap throws ConvergenceError.
  double cap_scale = 10.0;

  void validate() const;  // throws ConfigError
};

struct ReductionStep {
  enum class Kind { SizeReduce, Swap };
  Kind kind;
  std::size_t k;
  std::size_t j;  // meaningful for SizeReduce
};

/// Invoked after every size-reduction and swap with the current state; used
/// to validate the incremental GSO updates against a from-scratch
/// orthogonalization.
using StepObserver =
    std::function<void(const ReductionStep&, const ComplexMatrix& basis,
                       const ComplexMatrix& unimodular, const GsoState&)>;

struct ReductionOutput {
  ComplexMatrix reduced_basis;  // H' = H U
  ComplexMatrix unimodular;     // U, Gaussian-integer entries, |det| = 1
  GsoState gso;                 // incremental state of the reduced basis
  std::uint64_t swap_count = 0;
  std::uint64_t size_reduce_count = 0;
  /// Convergence potential D = prod_i prod_{j<=i} norms_sq[j], recorded
  /// relative to its starting value: entry 0 is 1, one entry follows each
  /// swap. Kept relative so the product stays inside double range at large n.
  std::vector<double> potential_trace;
  FlopTally tally;
  CostModel cost;
  bool counting_enabled = true;
  bool real_embedded = false;  // set by rlll_reduce
  /// Pass statistics of the conditional size-reduction test in the deep
  /// (j <= k-2) loop, the quantity behind the P_c / P_r comparison.
  std::uint64_t deep_test_evaluations = 0;
  std::uint64_t deep_test_passes = 0;

  double flops_total() const { return tally.weighted_total(cost); }
};

/// Reduces a complex lattice basis; follows the standard size-reduce /
/// swap loop with incremental coefficient updates, accumulating U in-loop.
ReductionOutput clll_reduce(const ComplexMatrix& basis,
                            const ReductionParams& params = {},
                            const CostModel& cost = CostModel::standard(),
                            const StepObserver& observer = {});

/// Same algorithm run on the real embedding of the basis (or directly on an
/// already-real basis), with real arithmetic and real flop weights.
ReductionOutput rlll_reduce(const ComplexMatrix& basis,
                            const ReductionParams& params = {},
                            const CostModel& cost = CostModel::standard(),
                            const StepObserver& observer = {});

/// One size-reduction of column k against column j (0-based, j < k):
/// c = round(mu_kj), h_k -= c h_j, u_k -= c u_j, mu row update. No-op when
/// c rounds to zero.
void size_reduce(ComplexMatrix& basis, ComplexMatrix& unimodular, GsoState& gso,
                 std::size_t k, std::size_t j, FlopScope fs = {});

/// Swaps columns k-1 and k (0-based, k >= 1) and updates (mu, norms)
/// in place; equivalent to a from-scratch orthogonalization of the swapped
/// basis.
void swap_update(ComplexMatrix& basis, ComplexMatrix& unimodular, GsoState& gso,
                 std::size_t k, FlopScope fs = {});

struct SizeViolation {
  std::size_t i, j;
  cplx mu;
};
struct LovaszViolation {
  std::size_t k;
  double lhs, rhs;
};
struct ReductionCheck {
  bool reduced = true;
  std::vector<SizeViolation> size_violations;
  std::vector<LovaszViolation> lovasz_violations;
};

/// Checks the size and Lovasz conditions with 1e-9 floating-point slack and
/// reports every violated index pair.
ReductionCheck is_clll_reduced(const ComplexMatrix& basis, double delta);

/// prod_i ||h_i|| / sqrt(det(H^H H)); 1 exactly for orthogonal bases.
double orthogonality_defect(const ComplexMatrix& basis);

}  // namespace latred
