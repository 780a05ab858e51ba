#pragma once

#include <optional>
#include <vector>

#include "latred/constellation.hpp"
#include "latred/flops.hpp"
#include "latred/linalg.hpp"
#include "latred/matrix.hpp"
#include "latred/reduction.hpp"

namespace latred {

enum class SicOrdering { Natural, Vblast };
enum class InnerDetector { Zf, Sic };

struct DetectionResult {
  std::vector<cplx> symbols;   // hard decisions, constellation points
  std::vector<cplx> pre_clip;  // unclipped estimate, lattice-aided paths only
};

// One-shot detectors. Factorization work is counted together with the
// per-vector processing when a tally is given; the sweep harness uses the
// workspace forms below to split preprocessing from processing.
DetectionResult detect_zf(const ComplexMatrix& h, const std::vector<cplx>& y,
                          const Constellation& c, FlopTally* tally = nullptr);
DetectionResult detect_sic(const ComplexMatrix& h, const std::vector<cplx>& y,
                           const Constellation& c,
                           SicOrdering ordering = SicOrdering::Natural,
                           FlopTally* tally = nullptr);
/// Exact maximum-likelihood search over the M^n candidate grid (refused when
/// M^n > 1e6). Implemented as a depth-first scan over the triangular factor
/// with nearest-first child ordering and strict-bound pruning, which visits
/// a subset of candidates but returns exactly the grid argmin; cost ties are
/// kept on the first candidate encountered in search order.
DetectionResult detect_ml(const ComplexMatrix& h, const std::vector<cplx>& y,
                          const Constellation& c, FlopTally* tally = nullptr);
/// Lattice-reduction-aided detection: shift/scale the receive vector into the
/// integer domain, run the inner detector against the reduced basis with
/// unconstrained integer slicing, transform back through U, then hard-limit.
DetectionResult lr_detect(const ComplexMatrix& h, const std::vector<cplx>& y,
                          const ReductionOutput& reduction, InnerDetector inner,
                          const Constellation& c, FlopTally* tally = nullptr);

// --- prefactored per-channel workspaces --------------------------------------

struct ZfWorkspace {
  ComplexMatrix pinv;
};
ZfWorkspace make_zf_workspace(const ComplexMatrix& h, FlopTally* preproc = nullptr);
DetectionResult detect_zf_with(const ZfWorkspace& ws, const std::vector<cplx>& y,
                               const Constellation& c, FlopTally* proc = nullptr);

struct SicWorkspace {
  QrResult qr;                     // of the (re)ordered channel
  std::vector<std::size_t> order;  // order[pos] = original column at position pos
};
SicWorkspace make_sic_workspace(const ComplexMatrix& h, SicOrdering ordering,
                                FlopTally* preproc = nullptr);
DetectionResult detect_sic_with(const SicWorkspace& ws, const std::vector<cplx>& y,
                                const Constellation& c, FlopTally* proc = nullptr);

struct MlWorkspace {
  QrResult qr;
  const Constellation* constellation = nullptr;
};
MlWorkspace make_ml_workspace(const ComplexMatrix& h, const Constellation& c,
                              FlopTally* preproc = nullptr);
DetectionResult detect_ml_with(const MlWorkspace& ws, const std::vector<cplx>& y,
                               FlopTally* proc = nullptr);

struct LrWorkspace {
  bool real_embedded = false;
  InnerDetector inner = InnerDetector::Sic;
  std::vector<cplx> shift;      // H * c_shift * ones, c_shift = -(sqrt(M)-1)(1+i)
  double shift_scalar = 0.0;    // -(sqrt(M)-1)
  // complex path
  ComplexMatrix unimodular;
  std::optional<QrT<cplx>> qr;
  std::optional<ComplexMatrix> pinv;
  // real-embedded path
  RealMatrix unimodular_r;
  std::optional<QrT<double>> qr_r;
  std::optional<RealMatrix> pinv_r;
};
LrWorkspace make_lr_workspace(const ComplexMatrix& h, const ReductionOutput& reduction,
                              InnerDetector inner, const Constellation& c,
                              FlopTally* preproc = nullptr);
DetectionResult lr_detect_with(const LrWorkspace& ws, const std::vector<cplx>& y,
                               const Constellation& c, FlopTally* proc = nullptr);

}  // namespace latred
