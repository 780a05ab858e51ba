#include "latred/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latred/errors.hpp"

namespace latred {

namespace {

constexpr Region kPre = Region::Qr;
constexpr Region kProc = Region::Processing;

void check_receive(const ComplexMatrix& h, const std::vector<cplx>& y) {
  if (y.size() != h.rows()) throw DimensionError("detector: y length mismatch");
}

std::vector<cplx> slice_vector(const std::vector<cplx>& v, const Constellation& c) {
  std::vector<cplx> out;
  out.reserve(v.size());
  for (const cplx& z : v) out.push_back(c.slice(z));
  return out;
}

}  // namespace

// --- ZF ----------------------------------------------------------------------

ZfWorkspace make_zf_workspace(const ComplexMatrix& h, FlopTally* preproc) {
  return {pseudo_inverse(h, FlopScope(preproc, kPre))};
}

DetectionResult detect_zf_with(const ZfWorkspace& ws, const std::vector<cplx>& y,
                               const Constellation& c, FlopTally* proc) {
  FlopScope fs(proc, kProc);
  const ComplexMatrix& g = ws.pinv;
  std::vector<cplx> est(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < g.cols(); ++j) acc += g(i, j) * y[j];
    fs.add(FlopEvent::ComplexMul, g.cols());
    fs.add(FlopEvent::ComplexAdd, g.cols() - 1);
    est[i] = acc;
  }
  fs.add(FlopEvent::Round, est.size());
  DetectionResult r;
  r.symbols = slice_vector(est, c);
  return r;
}

DetectionResult detect_zf(const ComplexMatrix& h, const std::vector<cplx>& y,
                          const Constellation& c, FlopTally* tally) {
  check_receive(h, y);
  return detect_zf_with(make_zf_workspace(h, tally), y, c, tally);
}

// --- SIC ---------------------------------------------------------------------

SicWorkspace make_sic_workspace(const ComplexMatrix& h, SicOrdering ordering,
                                FlopTally* preproc) {
  const std::size_t n = h.cols();
  SicWorkspace ws;
  ws.order.resize(n);
  if (ordering == SicOrdering::Natural) {
    for (std::size_t j = 0; j < n; ++j) ws.order[j] = j;
    ws.qr = qr_decompose(h, FlopScope(preproc, kPre));
    return ws;
  }
  // Strongest-first ordering: at each stage the stream with the smallest
  // nulling-vector norm (largest post-cancellation SNR) is detected next,
  // i.e. placed at the last remaining back-substitution position.
  FlopScope fs(preproc, kPre);
  std::vector<std::size_t> remaining(n);
  for (std::size_t j = 0; j < n; ++j) remaining[j] = j;
  for (std::size_t pos = n; pos-- > 0;) {
    ComplexMatrix sub(h.rows(), remaining.size());
    for (std::size_t j = 0; j < remaining.size(); ++j)
      for (std::size_t i = 0; i < h.rows(); ++i) sub(i, j) = h(i, remaining[j]);
    ComplexMatrix g = pseudo_inverse(sub, fs);
    std::size_t best = 0;
    double best_norm = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < g.rows(); ++r) {
      double s = 0.0;
      for (std::size_t cidx = 0; cidx < g.cols(); ++cidx) s += std::norm(g(r, cidx));
      fs.add(FlopEvent::AbsSqComplex, g.cols());
      fs.add(FlopEvent::RealAdd, g.cols() - 1);
      fs.add(FlopEvent::Compare);
      if (s < best_norm) {
        best_norm = s;
        best = r;
      }
    }
    ws.order[pos] = remaining[best];
    remaining.erase(remaining.begin() + static_cast<long>(best));
  }
  ComplexMatrix permuted(h.rows(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < h.rows(); ++i) permuted(i, j) = h(i, ws.order[j]);
  ws.qr = qr_decompose(permuted, fs);
  return ws;
}

DetectionResult detect_sic_with(const SicWorkspace& ws, const std::vector<cplx>& y,
                                const Constellation& c, FlopTally* proc) {
  FlopScope fs(proc, kProc);
  const std::size_t n = ws.qr.r.cols();
  std::vector<cplx> z = kernels::adjoint_apply(ws.qr.q, y, fs);
  std::vector<cplx> decided(n);
  for (std::size_t l = n; l-- > 0;) {
    cplx acc = z[l];
    for (std::size_t j = l + 1; j < n; ++j) acc -= ws.qr.r(l, j) * decided[j];
    if (n - l - 1 > 0) {
      fs.add(FlopEvent::ComplexMul, n - l - 1);
      fs.add(FlopEvent::ComplexAdd, n - l - 1);
    }
    cplx est = acc / ws.qr.r(l, l).real();
    fs.add(FlopEvent::ComplexDivReal);
    fs.add(FlopEvent::Round);
    decided[l] = c.slice(est);
  }
  DetectionResult r;
  r.symbols.resize(n);
  for (std::size_t l = 0; l < n; ++l) r.symbols[ws.order[l]] = decided[l];
  return r;
}

DetectionResult detect_sic(const ComplexMatrix& h, const std::vector<cplx>& y,
                           const Constellation& c, SicOrdering ordering,
                           FlopTally* tally) {
  check_receive(h, y);
  return detect_sic_with(make_sic_workspace(h, ordering, tally), y, c, tally);
}

// --- ML ----------------------------------------------------------------------

MlWorkspace make_ml_workspace(const ComplexMatrix& h, const Constellation& c,
                              FlopTally* preproc) {
  double log2_space = h.cols() * std::log2(static_cast<double>(c.order()));
  if (log2_space > std::log2(1e6))
    throw DimensionError("detect_ml: search space larger than 1e6 candidates");
  return {qr_decompose(h, FlopScope(preproc, kPre)), &c};
}

namespace {

struct MlSearch {
  const QrResult& qr;
  const Constellation& c;
  FlopScope fs;
  std::vector<cplx> z;          // Q^H y
  std::vector<int> current;     // symbol index per layer
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::pair<double, int>>> scratch;  // per level

  void descend(std::size_t level, double acc) {
    const std::size_t l = level - 1;
    const std::size_t n = qr.r.cols();
    cplx res = z[l];
    for (std::size_t j = l + 1; j < n; ++j) res -= qr.r(l, j) * c.point(current[j]);
    if (n - l - 1 > 0) {
      fs.add(FlopEvent::ComplexMul, n - l - 1);
      fs.add(FlopEvent::ComplexAdd, n - l - 1);
    }
    double diag = qr.r(l, l).real();
    auto& children = scratch[l];
    children.clear();
    for (int s = 0; s < c.order(); ++s) {
      cplx d = res - diag * c.point(s);
      double contrib = std::norm(d);
      fs.add(FlopEvent::ComplexMulReal);
      fs.add(FlopEvent::ComplexAdd);
      fs.add(FlopEvent::AbsSqComplex);
      fs.add(FlopEvent::RealAdd);
      children.emplace_back(acc + contrib, s);
    }
    std::sort(children.begin(), children.end());
    fs.add(FlopEvent::Compare, c.order());
    for (const auto& [cost, s] : children) {
      if (cost > best_cost) break;  // children sorted: the rest are no better
      current[l] = s;
      if (l == 0) {
        if (cost < best_cost) {
          best_cost = cost;
          best = current;
        }
      } else {
        descend(l, cost);
      }
    }
  }
};

}  // namespace

DetectionResult detect_ml_with(const MlWorkspace& ws, const std::vector<cplx>& y,
                               FlopTally* proc) {
  const Constellation& c = *ws.constellation;
  const std::size_t n = ws.qr.r.cols();
  MlSearch search{ws.qr, c, FlopScope(proc, kProc), {}, {}, {},
                  std::numeric_limits<double>::infinity(), {}};
  search.z = kernels::adjoint_apply(ws.qr.q, y, search.fs);
  search.current.assign(n, 0);
  search.best.assign(n, 0);
  search.scratch.resize(n);
  for (auto& s : search.scratch) s.reserve(c.order());
  search.descend(n, 0.0);
  DetectionResult r;
  r.symbols.reserve(n);
  for (std::size_t l = 0; l < n; ++l) r.symbols.push_back(c.point(search.best[l]));
  return r;
}

DetectionResult detect_ml(const ComplexMatrix& h, const std::vector<cplx>& y,
                          const Constellation& c, FlopTally* tally) {
  check_receive(h, y);
  return detect_ml_with(make_ml_workspace(h, c, tally), y, tally);
}

// --- lattice-reduction-aided -------------------------------------------------

LrWorkspace make_lr_workspace(const ComplexMatrix& h, const ReductionOutput& reduction,
                              InnerDetector inner, const Constellation& c,
                              FlopTally* preproc) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  LrWorkspace ws;
  ws.real_embedded = reduction.real_embedded;
  ws.inner = inner;
  ws.shift_scalar = -static_cast<double>(c.side() - 1);

  const ComplexMatrix& hp = reduction.reduced_basis;
  if (ws.real_embedded) {
    if (hp.rows() != 2 * m || hp.cols() != 2 * n)
      throw DimensionError("lr_detect: reduction does not match this channel");
  } else {
    if (hp.rows() != m || hp.cols() != n)
      throw DimensionError("lr_detect: reduction does not match this channel");
  }

  FlopScope fs(preproc, kPre);
  // shift = H * (c_shift * ones), c_shift = -(sqrt(M)-1)(1+i)
  cplx c_shift = ws.shift_scalar * cplx{1.0, 1.0};
  ws.shift.assign(m, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) ws.shift[i] += h(i, j);
  fs.add(FlopEvent::ComplexAdd, m * (n - 1));
  for (std::size_t i = 0; i < m; ++i) ws.shift[i] *= c_shift;
  fs.add(FlopEvent::ComplexMul, m);

  if (ws.real_embedded) {
    RealMatrix hp_r = to_real(hp);
    ws.unimodular_r = to_real(reduction.unimodular);
    if (inner == InnerDetector::Sic)
      ws.qr_r = qr_decompose(hp_r, fs);
    else
      ws.pinv_r = pseudo_inverse(hp_r, fs);
  } else {
    ws.unimodular = reduction.unimodular;
    if (inner == InnerDetector::Sic)
      ws.qr = qr_decompose(hp, fs);
    else
      ws.pinv = pseudo_inverse(hp, fs);
  }
  return ws;
}

namespace {

template <class T>
std::vector<T> integer_zf(const Mat<T>& pinv, const std::vector<T>& y, FlopScope fs) {
  using Ops = ScalarOps<T>;
  std::vector<T> out(pinv.rows());
  for (std::size_t i = 0; i < pinv.rows(); ++i) {
    T acc{};
    for (std::size_t j = 0; j < pinv.cols(); ++j) acc += pinv(i, j) * y[j];
    fs.add(Ops::mul_ev, pinv.cols());
    fs.add(Ops::add_ev, pinv.cols() - 1);
    out[i] = Ops::round_int(acc);
    fs.add(FlopEvent::Round);
  }
  return out;
}

template <class T>
std::vector<T> integer_sic(const QrT<T>& qr, const std::vector<T>& y, FlopScope fs) {
  using Ops = ScalarOps<T>;
  const std::size_t n = qr.r.cols();
  std::vector<T> z = kernels::adjoint_apply(qr.q, y, fs);
  std::vector<T> out(n);
  for (std::size_t l = n; l-- > 0;) {
    T acc = z[l];
    for (std::size_t j = l + 1; j < n; ++j) acc -= qr.r(l, j) * out[j];
    if (n - l - 1 > 0) {
      fs.add(Ops::mul_ev, n - l - 1);
      fs.add(Ops::add_ev, n - l - 1);
    }
    T est = acc / Ops::real_part(qr.r(l, l));
    fs.add(Ops::div_real_ev);
    out[l] = Ops::round_int(est);
    fs.add(FlopEvent::Round);
  }
  return out;
}

}  // namespace

DetectionResult lr_detect_with(const LrWorkspace& ws, const std::vector<cplx>& y,
                               const Constellation& c, FlopTally* proc) {
  FlopScope fs(proc, kProc);
  const std::size_t m = y.size();
  // y_tilde = (y - shift) / 2 lives on the integer lattice of the channel
  std::vector<cplx> yt(m);
  for (std::size_t i = 0; i < m; ++i) yt[i] = (y[i] - ws.shift[i]) * 0.5;
  fs.add(FlopEvent::ComplexAdd, m);
  fs.add(FlopEvent::ComplexMulReal, m);

  std::vector<cplx> z_hat;
  if (ws.real_embedded) {
    const std::size_t n2 = ws.unimodular_r.cols();
    std::vector<double> yt_r(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      yt_r[i] = yt[i].real();
      yt_r[i + m] = yt[i].imag();
    }
    std::vector<double> zp = ws.inner == InnerDetector::Sic
                                 ? integer_sic(*ws.qr_r, yt_r, fs)
                                 : integer_zf(*ws.pinv_r, yt_r, fs);
    std::vector<double> zi(n2, 0.0);
    for (std::size_t j = 0; j < n2; ++j) {
      if (zp[j] == 0.0) continue;
      for (std::size_t i = 0; i < n2; ++i) zi[i] += ws.unimodular_r(i, j) * zp[j];
      fs.add(FlopEvent::RealMul, n2);
      fs.add(FlopEvent::RealAdd, n2);
    }
    const std::size_t n = n2 / 2;
    z_hat.resize(n);
    for (std::size_t i = 0; i < n; ++i) z_hat[i] = cplx{zi[i], zi[i + n]};
  } else {
    const std::size_t n = ws.unimodular.cols();
    std::vector<cplx> zp = ws.inner == InnerDetector::Sic
                               ? integer_sic(*ws.qr, yt, fs)
                               : integer_zf(*ws.pinv, yt, fs);
    z_hat.assign(n, cplx{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
      if (zp[j] == cplx{0.0, 0.0}) continue;
      for (std::size_t i = 0; i < n; ++i) z_hat[i] += ws.unimodular(i, j) * zp[j];
      fs.add(FlopEvent::ComplexMul, n);
      fs.add(FlopEvent::ComplexAdd, n);
    }
  }

  // back through the affine map: x = 2 z + c_shift * ones
  cplx c_shift = ws.shift_scalar * cplx{1.0, 1.0};
  DetectionResult r;
  r.pre_clip.resize(z_hat.size());
  r.symbols.resize(z_hat.size());
  for (std::size_t i = 0; i < z_hat.size(); ++i) {
    r.pre_clip[i] = 2.0 * z_hat[i] + c_shift;
    fs.add(FlopEvent::ComplexMulReal);
    fs.add(FlopEvent::ComplexAdd);
    r.symbols[i] = c.slice(r.pre_clip[i]);
    fs.add(FlopEvent::Round);
  }
  return r;
}

DetectionResult lr_detect(const ComplexMatrix& h, const std::vector<cplx>& y,
                          const ReductionOutput& reduction, InnerDetector inner,
                          const Constellation& c, FlopTally* tally) {
  check_receive(h, y);
  return lr_detect_with(make_lr_workspace(h, reduction, inner, c, tally), y, c, tally);
}

}  // namespace latred
