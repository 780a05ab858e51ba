#pragma once

#include <vector>

#include "latred/matrix.hpp"

namespace latred {

struct LatticeOracleResult {
  double shortest_norm_sq = 0.0;              // lambda^2
  std::vector<double> successive_minima_sq;   // ascending; one per independent witness
  std::vector<std::vector<cplx>> witness_coeffs;  // integer coefficient vectors
};

/// Exhaustive search for the shortest lattice vector and the successive
/// minima reachable inside the ball of radius radius_mult * min_j ||h_j||.
/// Coefficients run over Gaussian integers for a complex basis, over plain
/// integers when every entry is real. The search enumerates exactly the
/// lattice points inside the ball (depth-first over the orthogonalized
/// coordinates), so lambda is exact whenever radius_mult >= 1: the shortest
/// vector can never be longer than the shortest basis column. Later minima
/// are exact only when the ball reaches them; pass
/// radius_mult >= max_j ||h_j|| / min_j ||h_j|| to capture all n.
///
/// Refuses bases beyond 3 complex (or 6 real) dimensions.
LatticeOracleResult shortest_vector_bruteforce(const ComplexMatrix& basis,
                                               double radius_mult = 1.0);

}  // namespace latred
