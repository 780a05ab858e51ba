#pragma once

#include <vector>

#include "latred/flops.hpp"
#include "latred/matrix.hpp"
#include "latred/scalar_ops.hpp"

namespace latred {

/// Gram-Schmidt state in coefficient form: mu(i,j) for i > j holds the
/// projection coefficient <h_i, h_j*> / ||h_j*||^2, norms_sq[i] holds
/// ||h_i*||^2. The orthogonal vectors themselves are never stored.
template <class T>
struct GsoT {
  Mat<T> mu;                    // n x n, strictly lower triangle meaningful
  std::vector<double> norms_sq; // per-column squared GSO norms
};

using GsoState = GsoT<cplx>;
using GsoStateReal = GsoT<double>;

/// Relative tolerance under which a squared GSO norm is treated as rank
/// deficiency: norms_sq[i] <= kRankTolerance * (max squared column norm).
inline constexpr double kRankTolerance = 1e-12;

/// Inner-product-form orthogonalization recurrence. Throws RankError when the
/// input is rank deficient and Error on non-finite entries.
template <class T>
GsoT<T> gso(const Mat<T>& basis, FlopScope fs = {});

extern template GsoT<cplx> gso(const Mat<cplx>&, FlopScope);
extern template GsoT<double> gso(const Mat<double>&, FlopScope);

template <class T>
struct QrT {
  Mat<T> q;  // m x n, orthonormal columns
  Mat<T> r;  // n x n upper triangular, real positive diagonal
};

using QrResult = QrT<cplx>;

/// Householder QR with explicit Q accumulation; the diagonal of R is
/// normalized real-positive so downstream back-substitution and tests are
/// deterministic. Requires full column rank.
template <class T>
QrT<T> qr_decompose(const Mat<T>& a, FlopScope fs = {});

extern template QrT<cplx> qr_decompose(const Mat<cplx>&, FlopScope);
extern template QrT<double> qr_decompose(const Mat<double>&, FlopScope);

/// Moore-Penrose pseudo-inverse of a full-column-rank matrix via QR:
/// pinv(A) = R^-1 Q^H. Satisfies pinv(A) * A = I within 1e-8.
template <class T>
Mat<T> pseudo_inverse(const Mat<T>& a, FlopScope fs = {});

extern template Mat<cplx> pseudo_inverse(const Mat<cplx>&, FlopScope);
extern template Mat<double> pseudo_inverse(const Mat<double>&, FlopScope);

/// [[Re H, -Im H], [Im H, Re H]]; output is 2m x 2n with zero imaginary
/// parts. Column norms are preserved, so the largest column norm of the
/// embedding equals that of the input.
ComplexMatrix real_embed(const ComplexMatrix& h);
RealMatrix real_embed_real(const ComplexMatrix& h);

/// log of sqrt(det(H^H H)) computed from the GSO norms; the lattice
/// determinant d(L) for a basis H.
double log_lattice_determinant(const ComplexMatrix& h);

// --- counted kernels used across modules -------------------------------------

namespace kernels {

/// <x, y> = sum conj(y_r) x_r over len entries (second argument conjugated).
template <class T>
T inner_product(const T* x, const T* y, std::size_t len, FlopScope fs) {
  using Ops = ScalarOps<T>;
  T acc{};
  for (std::size_t r = 0; r < len; ++r) acc += Ops::conj(y[r]) * x[r];
  fs.add(Ops::mul_ev, len);
  if (len > 1) fs.add(Ops::add_ev, len - 1);
  return acc;
}

template <class T>
double norm_sq(const T* x, std::size_t len, FlopScope fs) {
  using Ops = ScalarOps<T>;
  double acc = 0.0;
  for (std::size_t r = 0; r < len; ++r) acc += Ops::abs_sq(x[r]);
  fs.add(Ops::abs_sq_ev, len);
  if (len > 1) fs.add(FlopEvent::RealAdd, len - 1);
  return acc;
}

/// y <- y - c * x over len entries.
template <class T>
void subtract_scaled(T* y, const T* x, const T& c, std::size_t len, FlopScope fs) {
  using Ops = ScalarOps<T>;
  for (std::size_t r = 0; r < len; ++r) y[r] -= c * x[r];
  fs.add(Ops::mul_ev, len);
  fs.add(Ops::add_ev, len);
}

/// A^H y for the column block [first, first+count) of a.
template <class T>
std::vector<T> adjoint_apply(const Mat<T>& a, const std::vector<T>& y, FlopScope fs) {
  std::vector<T> out(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    out[j] = inner_product(y.data(), a.col(j), a.rows(), fs);
  return out;
}

/// Solves R x = b by back-substitution for upper-triangular R with real
/// positive diagonal.
template <class T>
std::vector<T> back_substitute(const Mat<T>& r, const std::vector<T>& b, FlopScope fs) {
  using Ops = ScalarOps<T>;
  std::size_t n = r.cols();
  std::vector<T> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    T acc = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= r(ii, j) * x[j];
    if (n - ii - 1 > 0) {
      fs.add(Ops::mul_ev, n - ii - 1);
      fs.add(Ops::add_ev, n - ii - 1);
    }
    x[ii] = acc / Ops::real_part(r(ii, ii));
    fs.add(Ops::div_real_ev);
  }
  return x;
}

inline std::vector<double> back_substitute_real(const Mat<double>& r,
                                                const std::vector<double>& b,
                                                FlopScope fs) {
  return back_substitute<double>(r, b, fs);
}

}  // namespace kernels

}  // namespace latred
