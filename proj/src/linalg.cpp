#include "latred/linalg.hpp"

#include <cmath>
#include <vector>

#include "latred/errors.hpp"

namespace latred {

namespace {

template <class T>
double max_column_norm_sq_plain(const Mat<T>& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += ScalarOps<T>::abs_sq(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <class T>
void check_input(const Mat<T>& a, const char* who) {
  if (a.cols() == 0 || a.rows() < a.cols())
    throw DimensionError(std::string(who) + ": need m >= n >= 1, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if constexpr (ScalarOps<T>::is_complex) {
        if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
          throw Error(std::string(who) + ": non-finite entry");
      } else {
        if (!std::isfinite(a(i, j))) throw Error(std::string(who) + ": non-finite entry");
      }
    }
}

}  // namespace

template <class T>
GsoT<T> gso(const Mat<T>& basis, FlopScope fs) {
  using Ops = ScalarOps<T>;
  check_input(basis, "gso");
  const std::size_t m = basis.rows();
  const std::size_t n = basis.cols();

  GsoT<T> g{Mat<T>(n, n), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j)
    g.norms_sq[j] = kernels::norm_sq(basis.col(j), m, fs);

  const double tol = kRankTolerance * max_column_norm_sq_plain(basis);

  for (std::size_t j = 0; j < n; ++j) {
    if (!(g.norms_sq[j] > tol))
      throw RankError("gso: rank deficiency at column " + std::to_string(j + 1));
    for (std::size_t i = j + 1; i < n; ++i) {
      T ip = kernels::inner_product(basis.col(i), basis.col(j), m, fs);
      for (std::size_t k = 0; k < j; ++k) {
        T term = Ops::conj(g.mu(j, k)) * g.mu(i, k);
        fs.add(Ops::mul_ev);
        term = term * Ops::from_real(g.norms_sq[k]);
        fs.add(Ops::mul_real_ev);
        ip -= term;
        fs.add(Ops::add_ev);
      }
      T mu_ij = ip / g.norms_sq[j];
      fs.add(Ops::div_real_ev);
      g.mu(i, j) = mu_ij;
      g.norms_sq[i] -= Ops::abs_sq(mu_ij) * g.norms_sq[j];
      fs.add(Ops::abs_sq_ev);
      fs.add(FlopEvent::RealMul);
      fs.add(FlopEvent::RealAdd);
    }
  }
  if (!(g.norms_sq[n - 1] > tol))
    throw RankError("gso: rank deficiency at column " + std::to_string(n));
  return g;
}

namespace {

// One elementary reflector H = I - c v v^H with real beta = Hx applied to e1.
template <class T>
struct Reflector {
  std::vector<T> v;
  T c;
  std::size_t offset;  // row index of the pivot
};

// Applies (I - c v v^H) to the length-L slice a.
template <class T>
void apply_reflector(T* a, const Reflector<T>& h, const T& c, FlopScope fs) {
  using Ops = ScalarOps<T>;
  T w = kernels::inner_product(a, h.v.data(), h.v.size(), fs);
  T t = c * w;
  fs.add(Ops::mul_ev);
  kernels::subtract_scaled(a, h.v.data(), t, h.v.size(), fs);
}

}  // namespace

template <class T>
QrT<T> qr_decompose(const Mat<T>& a, FlopScope fs) {
  using Ops = ScalarOps<T>;
  check_input(a, "qr_decompose");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double tol_sq = kRankTolerance * max_column_norm_sq_plain(a);

  Mat<T> work = a;
  std::vector<Reflector<T>> hs;
  hs.reserve(n);

  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t len = m - j;
    if (len < 2) break;  // nothing below the diagonal to annihilate
    T* x = work.col(j) + j;
    double nsq = Ops::real_part(kernels::inner_product(x, x, len, fs));
    if (!(nsq > tol_sq))
      throw RankError("qr_decompose: rank deficiency at column " + std::to_string(j + 1));
    double normx = std::sqrt(nsq);
    double beta = Ops::real_part(x[0]) > 0.0 ? -normx : normx;

    Reflector<T> h;
    h.offset = j;
    h.v.assign(x, x + len);
    h.v[0] = h.v[0] - Ops::from_real(beta);
    fs.add(FlopEvent::RealAdd);
    // c = 1 / (||x||^2 - beta * x1); makes I - c v v^H unitary with Hx = beta e1
    T denom = Ops::from_real(nsq) - Ops::from_real(beta) * x[0];
    fs.add(Ops::mul_real_ev);
    fs.add(Ops::add_ev);
    if constexpr (Ops::is_complex) {
      T d2 = denom * Ops::conj(denom);
      fs.add(Ops::mul_ev);
      h.c = Ops::conj(denom) / d2.real();
      fs.add(Ops::div_real_ev);
    } else {
      h.c = 1.0 / denom;
      fs.add(FlopEvent::RealDiv);
    }

    x[0] = Ops::from_real(beta);
    for (std::size_t r = 1; r < len; ++r) x[r] = T{};
    for (std::size_t col = j + 1; col < n; ++col)
      apply_reflector(work.col(col) + j, h, h.c, fs);
    hs.push_back(std::move(h));
  }

  // Accumulate Q by applying the adjoint reflectors to I in backward order.
  Mat<T> q(m, n);
  for (std::size_t j = 0; j < n; ++j) q(j, j) = T{1};
  for (std::size_t jj = hs.size(); jj-- > 0;) {
    const Reflector<T>& h = hs[jj];
    T c_adj = Ops::conj(h.c);
    for (std::size_t col = 0; col < n; ++col)
      apply_reflector(q.col(col) + h.offset, h, c_adj, fs);
  }

  Mat<T> r(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i <= j; ++i) r(i, j) = work(i, j);

  // Normalize the diagonal real-positive. Reflector diagonals are already
  // real; the trailing scalar left when m == n may carry a phase.
  for (std::size_t j = 0; j < n; ++j) {
    T d = r(j, j);
    if constexpr (Ops::is_complex) {
      if (d.imag() != 0.0) {
        double ad2 = (d * Ops::conj(d)).real();
        fs.add(Ops::mul_ev);
        if (!(ad2 > 0.0)) throw RankError("qr_decompose: zero diagonal");
        double ad = std::sqrt(ad2);
        T phase = d / ad;
        fs.add(Ops::div_real_ev);
        T phase_conj = Ops::conj(phase);
        r(j, j) = Ops::from_real(ad);
        for (std::size_t col = j + 1; col < n; ++col) {
          r(j, col) = r(j, col) * phase_conj;
          fs.add(Ops::mul_ev);
        }
        for (std::size_t i = 0; i < m; ++i) {
          q(i, j) = q(i, j) * phase;
          fs.add(Ops::mul_ev);
        }
        continue;
      }
    }
    if (Ops::real_part(d) < 0.0) {
      for (std::size_t col = j; col < n; ++col) {
        r(j, col) = -r(j, col);
        fs.add(FlopEvent::Negate);
      }
      for (std::size_t i = 0; i < m; ++i) {
        q(i, j) = -q(i, j);
        fs.add(FlopEvent::Negate);
      }
    }
    if (!(Ops::real_part(r(j, j)) > 0.0))
      throw RankError("qr_decompose: rank deficiency at column " + std::to_string(j + 1));
  }
  return {std::move(q), std::move(r)};
}

template <class T>
Mat<T> pseudo_inverse(const Mat<T>& a, FlopScope fs) {
  using Ops = ScalarOps<T>;
  check_input(a, "pseudo_inverse");
  QrT<T> f = qr_decompose(a, fs);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Mat<T> out(n, m);
  std::vector<T> b(n);
  for (std::size_t col = 0; col < m; ++col) {
    for (std::size_t i = 0; i < n; ++i) b[i] = Ops::conj(f.q(col, i));
    std::vector<T> x = kernels::back_substitute(f.r, b, fs);
    for (std::size_t i = 0; i < n; ++i) out(i, col) = x[i];
  }
  return out;
}

ComplexMatrix real_embed(const ComplexMatrix& h) {
  return to_complex(real_embed_real(h));
}

RealMatrix real_embed_real(const ComplexMatrix& h) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  RealMatrix out(2 * m, 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      double re = h(i, j).real();
      double im = h(i, j).imag();
      out(i, j) = re;
      out(i + m, j) = im;
      out(i, j + n) = -im;
      out(i + m, j + n) = re;
    }
  return out;
}

double log_lattice_determinant(const ComplexMatrix& h) {
  GsoState g = gso(h);
  double acc = 0.0;
  for (double v : g.norms_sq) acc += std::log(v);
  return 0.5 * acc;
}

template GsoT<cplx> gso(const Mat<cplx>&, FlopScope);
template GsoT<double> gso(const Mat<double>&, FlopScope);
template QrT<cplx> qr_decompose(const Mat<cplx>&, FlopScope);
template QrT<double> qr_decompose(const Mat<double>&, FlopScope);
template Mat<cplx> pseudo_inverse(const Mat<cplx>&, FlopScope);
template Mat<double> pseudo_inverse(const Mat<double>&, FlopScope);

}  // namespace latred
