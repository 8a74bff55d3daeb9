#include "wf/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include "wf/random.hpp"

namespace wf {

namespace {

// One Lanczos cycle from `start`; returns the lowest Ritz pair of the cycle.
RitzPair lanczos_cycle(const MatVec& op, const CVector& start, const LanczosOptions& opts) {
  const Index n = start.size();
  const int m = static_cast<int>(std::min<Index>(opts.krylov_dim, n));
  CMatrix basis(n, m);
  std::vector<double> alpha, beta;
  basis.col(0) = start / start.norm();
  RitzPair best;
  Eigen::VectorXd ritz_coeffs;
  int k = 0;
  for (; k < m; ++k) {
    CVector w = op(basis.col(k));
    ++best.matvecs;
    const double a = basis.col(k).dot(w).real();
    alpha.push_back(a);
    // Full reorthogonalization, twice for stability.
    for (int pass = 0; pass < 2; ++pass) {
      w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * w);
    }
    const double b = w.norm();

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
      t(i, i) = alpha[i];
      if (i > 0) t(i, i - 1) = t(i - 1, i) = beta[i - 1];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(t);
    const double theta = tri.eigenvalues()(0);
    ritz_coeffs = tri.eigenvectors().col(0);
    const double residual = b * std::abs(ritz_coeffs(k));
    best.value = theta;
    best.residual = residual;
    const double floor = std::max(std::abs(theta), opts.scale);
    if (residual <= opts.tol * floor || b <= 1e-14 * floor || k + 1 == m) {
      best.converged = residual <= opts.tol * floor || b <= 1e-14 * floor;
      ++k;
      break;
    }
    beta.push_back(b);
    basis.col(k + 1) = w / b;
  }
  best.vector = basis.leftCols(k) * ritz_coeffs.cast<Complex>();
  best.vector /= best.vector.norm();
  return best;
}

}  // namespace

RitzPair lanczos_smallest(const MatVec& op, const CVector& start, const LanczosOptions& opts) {
  CVector current = start;
  RitzPair result;
  int matvecs = 0;
  for (int cycle = 0; cycle < opts.max_cycles; ++cycle) {
    result = lanczos_cycle(op, current, opts);
    matvecs += result.matvecs;
    if (result.converged) break;
    current = result.vector;
  }
  result.matvecs = matvecs;
  return result;
}

RitzPair lanczos_largest(const MatVec& op, const CVector& start, const LanczosOptions& opts) {
  MatVec neg = [&op](const CVector& x) -> CVector { return -op(x); };
  RitzPair r = lanczos_smallest(neg, start, opts);
  r.value = -r.value;
  return r;
}

double lanczos_norm(const MatVec& op, Index dim, std::uint64_t seed, const LanczosOptions& opts) {
  Rng rng = make_stream(seed, 0x6e6f726d);
  const CVector start = random_unit_vector(dim, rng);
  const RitzPair lo = lanczos_smallest(op, start, opts);
  const RitzPair hi = lanczos_largest(op, start, opts);
  return std::max(std::abs(lo.value), std::abs(hi.value));
}

}  // namespace wf
