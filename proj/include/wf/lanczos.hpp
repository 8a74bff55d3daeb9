#pragma once

#include <cstdint>
#include <functional>

#include "wf/hermitian.hpp"

namespace wf {

using MatVec = std::function<CVector(const CVector&)>;

struct RitzPair {
  double value = 0.0;
  CVector vector;
  double residual = 0.0;
  bool converged = false;
  int matvecs = 0;
};

struct LanczosOptions {
  int krylov_dim = 60;    // per cycle
  int max_cycles = 20;    // restarts from the current Ritz vector
  double tol = 1e-10;     // residual relative to max(|value|, scale)
  double scale = 1.0;     // absolute floor for the residual test
};

/// Smallest eigenpair of a Hermitian linear map by restarted Lanczos with
/// full reorthogonalization. The start vector lies in the first Krylov
/// space, so the returned Rayleigh quotient never exceeds the start's.
RitzPair lanczos_smallest(const MatVec& op, const CVector& start, const LanczosOptions& opts = {});

RitzPair lanczos_largest(const MatVec& op, const CVector& start, const LanczosOptions& opts = {});

/// max |lambda| of a Hermitian map.
double lanczos_norm(const MatVec& op, Index dim, std::uint64_t seed, const LanczosOptions& opts = {});

}  // namespace wf
