#pragma once

#include <optional>
#include <vector>

#include "wf/hermitian.hpp"
#include "wf/optimize.hpp"

namespace wf {

/// A PPT state on which W is negative: certifies W is not decomposable.
struct PPTViolation {
  HermitianOperator state;
  double value;  // tr(W state)
};

struct PPTSearchResult {
  std::optional<PPTViolation> violation;
  double best_value = 0.0;  // lowest tr(W rho) over feasible iterates
  bool converged = false;   // every restart reached a fixed point
  int restarts_run = 0;
};

/// Minimizes tr(W rho) over unit-trace states with positive partial
/// transpose by projected gradient (Dykstra projections onto the PSD and
/// PPT unit-trace sets). Extra start states may be supplied. A returned
/// violation satisfies lambda_min(rho), lambda_min(rho^T_B) >= 0 exactly up
/// to eigensolver rounding; no violation is not a decomposability proof.
PPTSearchResult find_ppt_violation(const HermitianOperator& w, const OptimizerConfig& cfg,
                                   const std::vector<HermitianOperator>& seeds = {});

/// Projects a Hermitian matrix onto {rho >= 0, tr rho = 1}.
HermitianOperator project_unit_trace_psd(const HermitianOperator& x);

/// Projects onto unit-trace PSD matrices, clipping eigenvalues at zero.
HermitianOperator project_psd(const HermitianOperator& x);

struct Decomposition {
  HermitianOperator p;
  HermitianOperator q;
};

struct DecompositionResult {
  std::optional<Decomposition> decomposition;
  double residual = 0.0;            // ||P + Q^T_B - W||_F of the final iterate
  double min_eig_p = 0.0;
  double min_eig_q = 0.0;
  int iterations = 0;
};

/// Searches for W = P + Q^T_B with P, Q >= 0 by Dykstra alternating
/// projections between {Q >= 0} and {Q : W - Q^T_B >= 0}. Success is a
/// decomposability certificate; failure is inconclusive.
DecompositionResult attempt_decomposition(const HermitianOperator& w, const OptimizerConfig& cfg,
                                          int max_iterations = 20000);

}  // namespace wf
