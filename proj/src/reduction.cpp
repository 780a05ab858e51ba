#include "latred/reduction.hpp"

#include <cmath>
#include <string>

#include "latred/errors.hpp"

namespace latred {

void ReductionParams::validate() const {
  if (!(delta > 0.5) || delta > 1.0 || (delta == 1.0 && !allow_delta_one))
    throw ConfigError("delta must satisfy 1/2 < delta < 1 (delta = 1 only with "
                      "allow_delta_one)");
  if (!(cap_scale > 0.0)) throw ConfigError("cap_scale must be positive");
}

namespace {

template <class T>
void size_reduce_step(Mat<T>& h, Mat<T>& u, GsoT<T>& g, std::size_t k, std::size_t j,
                      FlopScope fs, std::uint64_t* counter) {
  using Ops = ScalarOps<T>;
  T c = Ops::round_int(g.mu(k, j));
  fs.add(FlopEvent::Round);
  if (Ops::is_zero(c)) return;
  kernels::subtract_scaled(h.col(k), h.col(j), c, h.rows(), fs);
  kernels::subtract_scaled(u.col(k), u.col(j), c, u.rows(), fs);
  for (std::size_t l = 0; l < j; ++l) {
    g.mu(k, l) -= c * g.mu(j, l);
    fs.add(Ops::mul_ev);
    fs.add(Ops::add_ev);
  }
  g.mu(k, j) -= c;  // the implicit unit diagonal of the mu factor
  fs.add(Ops::add_ev);
  if (counter != nullptr) ++*counter;
}

template <class T>
double swap_update_step(Mat<T>& h, Mat<T>& u, GsoT<T>& g, std::size_t k, FlopScope fs) {
  using Ops = ScalarOps<T>;
  const std::size_t n = h.cols();
  const T mu_old = g.mu(k, k - 1);
  const double h_km1 = g.norms_sq[k - 1];
  const double h_k = g.norms_sq[k];

  double mu_sq = Ops::abs_sq(mu_old);
  fs.add(Ops::abs_sq_ev);
  double h_km1_new = h_k + mu_sq * h_km1;
  fs.add(FlopEvent::RealMul);
  fs.add(FlopEvent::RealAdd);
  double ratio_old_new = h_km1 / h_km1_new;
  fs.add(FlopEvent::RealDiv);
  T mu_new = Ops::conj(mu_old) * Ops::from_real(ratio_old_new);
  fs.add(Ops::mul_real_ev);
  double h_k_new = ratio_old_new * h_k;
  fs.add(FlopEvent::RealMul);
  double ratio_k = h_k / h_km1_new;
  fs.add(FlopEvent::RealDiv);

  for (std::size_t i = k + 1; i < n; ++i) {
    T a = g.mu(i, k - 1);
    T b = g.mu(i, k);
    g.mu(i, k - 1) = a * mu_new + b * Ops::from_real(ratio_k);
    fs.add(Ops::mul_ev);
    fs.add(Ops::mul_real_ev);
    fs.add(Ops::add_ev);
    g.mu(i, k) = a - b * mu_old;
    fs.add(Ops::mul_ev);
    fs.add(Ops::add_ev);
  }
  for (std::size_t j = 0; j + 1 < k; ++j) std::swap(g.mu(k - 1, j), g.mu(k, j));

  g.mu(k, k - 1) = mu_new;
  g.norms_sq[k - 1] = h_km1_new;
  g.norms_sq[k] = h_k_new;
  h.swap_cols(k - 1, k);
  u.swap_cols(k - 1, k);
  // D changes by exactly this column's norm ratio.
  return std::log(h_km1_new / h_km1);
}

template <class T>
struct EngineResult {
  Mat<T> h;
  Mat<T> u;
  GsoT<T> gso;
  std::uint64_t swaps = 0;
  std::uint64_t size_reductions = 0;
  std::vector<double> potential_trace;
  std::uint64_t deep_evals = 0;
  std::uint64_t deep_passes = 0;
};

template <class T>
EngineResult<T> run_reduction(const Mat<T>& basis, const ReductionParams& params,
                              FlopTally* tally, const StepObserver& observer) {
  using Ops = ScalarOps<T>;
  params.validate();
  const std::size_t n = basis.cols();

  EngineResult<T> st;
  st.h = basis;
  st.u = Mat<T>::identity(n);
  st.gso = gso(st.h, FlopScope(tally, Region::Gso));
  st.potential_trace.push_back(1.0);

  // Non-convergence guard: swaps are bounded by the potential argument, so a
  // cap proportional to n^2 log2(B / lambda_est) catches only pathologies.
  double b_norm_sq = 0.0;
  double lambda_est_sq = st.gso.norms_sq[0];
  for (std::size_t j = 0; j < n; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < basis.rows(); ++i) c += Ops::abs_sq(basis(i, j));
    b_norm_sq = std::max(b_norm_sq, c);
    lambda_est_sq = std::min(lambda_est_sq, st.gso.norms_sq[j]);
  }
  double log_ratio = 0.5 * std::log2(b_norm_sq / lambda_est_sq);
  std::uint64_t cap = 100 + static_cast<std::uint64_t>(
      params.cap_scale * static_cast<double>(n) * static_cast<double>(n) *
      std::max(1.0, log_ratio));

  auto notify = [&](ReductionStep::Kind kind, std::size_t k, std::size_t j) {
    if (!observer) return;
    ReductionStep step{kind, k, j};
    if constexpr (Ops::is_complex) {
      observer(step, st.h, st.u, st.gso);
    } else {
      GsoState gc{to_complex(st.gso.mu), st.gso.norms_sq};
      observer(step, to_complex(st.h), to_complex(st.u), gc);
    }
  };

  FlopScope main_fs(tally, Region::MainLoop);
  FlopScope sr_fs(tally, Region::SizeReduce);
  FlopScope swap_fs(tally, Region::Swap);

  double log_pot_rel = 0.0;
  std::uint64_t iterations = 0;
  std::size_t k = 1;
  while (k < n) {
    if (++iterations > cap)
      throw ConvergenceError("reduction hit the iteration cap (" +
                             std::to_string(cap) + ") at n = " + std::to_string(n));
    main_fs.add(FlopEvent::Compare);
    if (Ops::exceeds_half(st.gso.mu(k, k - 1))) {
      size_reduce_step(st.h, st.u, st.gso, k, k - 1, sr_fs, &st.size_reductions);
      notify(ReductionStep::Kind::SizeReduce, k, k - 1);
    }
    // Lovasz test on columns k-1, k
    double mu_sq = Ops::abs_sq(st.gso.mu(k, k - 1));
    main_fs.add(Ops::abs_sq_ev);
    double rhs = (params.delta - mu_sq) * st.gso.norms_sq[k - 1];
    main_fs.add(FlopEvent::RealAdd);
    main_fs.add(FlopEvent::RealMul);
    main_fs.add(FlopEvent::Compare);
    if (st.gso.norms_sq[k] < rhs) {
      log_pot_rel += swap_update_step(st.h, st.u, st.gso, k, swap_fs);
      ++st.swaps;
      st.potential_trace.push_back(std::exp(log_pot_rel));
      notify(ReductionStep::Kind::Swap, k, k - 1);
      k = std::max<std::size_t>(1, k - 1);
    } else {
      for (std::size_t jj = k; jj-- > 1;) {
        std::size_t j = jj - 1;  // j runs k-2 .. 0
        ++st.deep_evals;
        main_fs.add(FlopEvent::Compare);
        if (Ops::exceeds_half(st.gso.mu(k, j))) {
          ++st.deep_passes;
          size_reduce_step(st.h, st.u, st.gso, k, j, sr_fs, &st.size_reductions);
          notify(ReductionStep::Kind::SizeReduce, k, j);
        }
      }
      ++k;
    }
  }
  return st;
}

ReductionOutput package(EngineResult<cplx>&& st, FlopTally&& tally,
                        const ReductionParams& params, const CostModel& cost,
                        bool real_embedded) {
  ReductionOutput out;
  out.reduced_basis = std::move(st.h);
  out.unimodular = std::move(st.u);
  out.gso = std::move(st.gso);
  out.swap_count = st.swaps;
  out.size_reduce_count = st.size_reductions;
  out.potential_trace = std::move(st.potential_trace);
  out.tally = std::move(tally);
  out.cost = cost;
  out.counting_enabled = params.count_flops;
  out.real_embedded = real_embedded;
  out.deep_test_evaluations = st.deep_evals;
  out.deep_test_passes = st.deep_passes;
  return out;
}

}  // namespace

ReductionOutput clll_reduce(const ComplexMatrix& basis, const ReductionParams& params,
                            const CostModel& cost, const StepObserver& observer) {
  FlopTally tally;
  FlopTally* tp = params.count_flops ? &tally : nullptr;
  EngineResult<cplx> st = run_reduction(basis, params, tp, observer);
  return package(std::move(st), std::move(tally), params, cost, false);
}

ReductionOutput rlll_reduce(const ComplexMatrix& basis, const ReductionParams& params,
                            const CostModel& cost, const StepObserver& observer) {
  RealMatrix real_basis =
      is_real_valued(basis) ? to_real(basis) : real_embed_real(basis);
  FlopTally tally;
  FlopTally* tp = params.count_flops ? &tally : nullptr;
  EngineResult<double> st = run_reduction(real_basis, params, tp, observer);
  EngineResult<cplx> cst;
  cst.h = to_complex(st.h);
  cst.u = to_complex(st.u);
  cst.gso = GsoState{to_complex(st.gso.mu), std::move(st.gso.norms_sq)};
  cst.swaps = st.swaps;
  cst.size_reductions = st.size_reductions;
  cst.potential_trace = std::move(st.potential_trace);
  cst.deep_evals = st.deep_evals;
  cst.deep_passes = st.deep_passes;
  return package(std::move(cst), std::move(tally), params, cost, true);
}

void size_reduce(ComplexMatrix& basis, ComplexMatrix& unimodular, GsoState& gso_state,
                 std::size_t k, std::size_t j, FlopScope fs) {
  if (k >= basis.cols() || j >= k)
    throw DimensionError("size_reduce: need j < k < n");
  size_reduce_step(basis, unimodular, gso_state, k, j, fs, nullptr);
}

void swap_update(ComplexMatrix& basis, ComplexMatrix& unimodular, GsoState& gso_state,
                 std::size_t k, FlopScope fs) {
  if (k < 1 || k >= basis.cols())
    throw DimensionError("swap_update: need 1 <= k < n");
  (void)swap_update_step(basis, unimodular, gso_state, k, fs);
}

ReductionCheck is_clll_reduced(const ComplexMatrix& basis, double delta) {
  constexpr double slack = 1e-9;
  GsoState g = gso(basis);
  const std::size_t n = basis.cols();
  ReductionCheck check;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      cplx mu = g.mu(i, j);
      if (std::fabs(mu.real()) > 0.5 + slack || std::fabs(mu.imag()) > 0.5 + slack)
        check.size_violations.push_back({i, j, mu});
    }
  for (std::size_t k = 1; k < n; ++k) {
    double mu_sq = std::norm(g.mu(k, k - 1));
    double rhs = (delta - mu_sq) * g.norms_sq[k - 1] - slack * g.norms_sq[k - 1];
    if (g.norms_sq[k] < rhs)
      check.lovasz_violations.push_back({k, g.norms_sq[k], rhs});
  }
  check.reduced = check.size_violations.empty() && check.lovasz_violations.empty();
  return check;
}

double orthogonality_defect(const ComplexMatrix& basis) {
  GsoState g = gso(basis);  // throws RankError when singular
  double log_defect = 0.0;
  for (std::size_t j = 0; j < basis.cols(); ++j)
    log_defect += 0.5 * (std::log(column_norm_sq(basis, j)) - std::log(g.norms_sq[j]));
  return std::exp(log_defect);
}

}  // namespace latred
