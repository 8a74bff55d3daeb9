#include "wf/ppt.hpp"

#include <algorithm>
#include <cmath>

#include "wf/random.hpp"

namespace wf {

namespace {

constexpr int kOuterCap = 5000;
constexpr int kDykstraCap = 500;

void require_bipartite_dense(const HermitianOperator& w) {
  if (w.dims().size() != 2) throw DimensionError("PPT routines need a bipartite operator");
  if (w.dim() > kDenseCap) throw DimensionError("PPT routines need a dense operator");
}

// Euclidean projection of a real vector onto the probability simplex.
RVector project_simplex(const RVector& values) {
  RVector sorted = values;
  std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
  double cumulative = 0.0;
  double threshold = 0.0;
  for (Index k = 0; k < sorted.size(); ++k) {
    cumulative += sorted(k);
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted(k) - t > 0.0) threshold = t;
  }
  return (values.array() - threshold).cwiseMax(0.0);
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

CMatrix unit_trace_psd(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  const RVector lam = project_simplex(solver.eigenvalues());
  return hermitian_part(solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint());
}

CMatrix psd_part(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  const RVector lam = solver.eigenvalues().cwiseMax(0.0);
  return hermitian_part(solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint());
}

CMatrix pt_matrix(const CMatrix& m, const std::vector<Index>& dims) {
  return partial_transpose(HermitianOperator(dims, hermitian_part(m)), 1).matrix();
}

// Dykstra's alternating projections onto unit-trace PSD and unit-trace PPT.
CMatrix project_ppt_states(const CMatrix& x0, const std::vector<Index>& dims) {
  CMatrix x = x0;
  CMatrix p = CMatrix::Zero(x.rows(), x.cols());
  CMatrix q = CMatrix::Zero(x.rows(), x.cols());
  for (int k = 0; k < kDykstraCap; ++k) {
    const CMatrix y = unit_trace_psd(x + p);
    p = x + p - y;
    const CMatrix next = pt_matrix(unit_trace_psd(pt_matrix(y + q, dims)), dims);
    q = y + q - next;
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (change < 1e-13) break;
  }
  return x;
}

// Mixes in the maximally mixed state just enough to make rho and rho^T_B PSD.
HermitianOperator make_feasible(const CMatrix& rho_in, const std::vector<Index>& dims) {
  CMatrix rho = hermitian_part(rho_in);
  rho /= rho.trace().real();
  const double d = static_cast<double>(rho.rows());
  for (int attempt = 0; attempt < 4; ++attempt) {
    const HermitianOperator op(dims, rho);
    const double low = std::min(min_eigenvalue(op), min_eigenvalue(partial_transpose(op, 1)));
    if (low >= 0.0) return op;
    const double t = std::min(1.0, -low / (1.0 / d - low) * (1.0 + 1e-9) + 1e-15);
    rho = (1.0 - t) * rho + t * CMatrix::Identity(rho.rows(), rho.cols()) / d;
    rho = hermitian_part(rho);
    rho /= rho.trace().real();
  }
  return {dims, rho};
}

}  // namespace

HermitianOperator project_unit_trace_psd(const HermitianOperator& x) {
  return {x.dims(), unit_trace_psd(x.matrix())};
}

HermitianOperator project_psd(const HermitianOperator& x) { return {x.dims(), psd_part(x.matrix())}; }

PPTSearchResult find_ppt_violation(const HermitianOperator& w, const OptimizerConfig& cfg,
                                   const std::vector<HermitianOperator>& seeds) {
  cfg.validate();
  require_bipartite_dense(w);
  const auto& dims = w.dims();
  const double norm = operator_norm(w);
  PPTSearchResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  if (norm == 0.0) {
    result.best_value = 0.0;
    result.converged = true;
    return result;
  }
  const double step = 1.0 / (2.0 * norm);
  const CMatrix& wm = w.matrix();

  std::vector<CMatrix> starts;
  for (const auto& s : seeds) {
    if (s.dims() != dims) throw DimensionError("seed state dims differ from witness");
    starts.push_back(s.matrix());
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(r));
    starts.push_back(random_density_matrix(dims, rng).matrix());
  }

  bool all_converged = true;
  for (const CMatrix& start : starts) {
    CMatrix rho = project_ppt_states(start, dims);
    bool converged = false;
    for (int it = 0; it < kOuterCap; ++it) {
      const CMatrix next = project_ppt_states(rho - step * wm, dims);
      const double change = (next - rho).cwiseAbs().maxCoeff();
      rho = next;
      if (change < 1e-12) {
        converged = true;
        break;
      }
    }
    all_converged = all_converged && converged;
    ++result.restarts_run;
    HermitianOperator state = make_feasible(rho, dims);
    const double value = w.trace_product(state);
    result.best_value = std::min(result.best_value, value);
    if (value < -cfg.tol_zero) {
      result.violation = PPTViolation{std::move(state), value};
      break;
    }
  }
  result.converged = all_converged;
  return result;
}

DecompositionResult attempt_decomposition(const HermitianOperator& w, const OptimizerConfig& cfg,
                                          int max_iterations) {
  cfg.validate();
  require_bipartite_dense(w);
  const auto& dims = w.dims();
  DecompositionResult result;

  auto finish = [&](const CMatrix& q_raw) {
    HermitianOperator q(dims, psd_part(q_raw));
    HermitianOperator p = w - partial_transpose(q, 1);
    result.residual = (p.matrix() + partial_transpose(q, 1).matrix() - w.matrix()).norm();
    result.min_eig_p = min_eigenvalue(p);
    result.min_eig_q = min_eigenvalue(q);
    const bool ok = result.residual <= 1e-7 && result.min_eig_p >= -1e-8 && result.min_eig_q >= -1e-8;
    if (ok) result.decomposition = Decomposition{std::move(p), std::move(q)};
    return ok;
  };

  // Trivial forms first: W >= 0 or W^T_B >= 0.
  if (min_eigenvalue(w) >= 0.0) {
    result.decomposition = Decomposition{w, HermitianOperator::zero(dims)};
    result.min_eig_p = min_eigenvalue(w);
    return result;
  }
  if (finish(partial_transpose(w, 1).matrix())) return result;

  const CMatrix& wm = w.matrix();
  CMatrix q = psd_part(pt_matrix(wm, dims));
  CMatrix inc1 = CMatrix::Zero(q.rows(), q.cols());
  CMatrix inc2 = CMatrix::Zero(q.rows(), q.cols());
  for (int it = 0; it < max_iterations; ++it) {
    result.iterations = it + 1;
    const CMatrix y = psd_part(q + inc1);
    inc1 = q + inc1 - y;
    const CMatrix z = y + inc2;
    // Nearest Q with W - Q^T_B >= 0: Q^T_B = W - (W - Z^T_B)_+.
    const CMatrix next = pt_matrix(wm - psd_part(wm - pt_matrix(z, dims)), dims);
    inc2 = z - next;
    q = next;
    if (it % 10 == 9 && finish(q)) return result;
  }
  finish(q);
  return result;
}

}  // namespace wf
