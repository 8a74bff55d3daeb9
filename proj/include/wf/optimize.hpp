#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wf/hermitian.hpp"
#include "wf/structured.hpp"

namespace wf {

struct OptimizerConfig {
  int restarts = 64;
  std::uint64_t seed = 0;
  double tol_converge = 1e-12;  // relative objective change per sweep
  double tol_zero = 1e-7;       // "expectation vanishes"
  int max_sweeps = 1000;

  /// Throws std::invalid_argument on non-positive tolerances or restarts < 1.
  void validate() const;
};

struct MinProdResult {
  double value = 0.0;
  ProductVector argmin;
  bool converged = false;
  int restarts_used = 0;
  /// False if any half-step ever increased the objective (should not happen).
  bool monotone = true;
  int sweeps = 0;  // sweeps of the winning restart
};

/// An operator on C^dA (x) C^dB seen through product vectors.
class BilinearForm {
 public:
  virtual ~BilinearForm() = default;
  virtual Index dim_a() const = 0;
  virtual Index dim_b() const = 0;
  virtual double expectation(const ProductVector& pv) const = 0;

  struct HalfStep {
    double value;
    CVector vector;
  };
  /// Holds `w` on side `fixed` and minimizes over unit vectors on the other
  /// side. `current` is the incumbent on the free side; the result is never
  /// worse than it.
  virtual HalfStep minimize_free_side(Side fixed, const CVector& w, const CVector& current) const = 0;
};

/// Dense bipartite form; dims collapse to {dims[0], rest}.
class DenseBilinearForm final : public BilinearForm {
 public:
  explicit DenseBilinearForm(HermitianOperator x);
  Index dim_a() const override { return da_; }
  Index dim_b() const override { return db_; }
  double expectation(const ProductVector& pv) const override;
  HalfStep minimize_free_side(Side fixed, const CVector& w, const CVector& current) const override;
  const HermitianOperator& op() const { return x_; }

 private:
  HermitianOperator x_;
  Index da_, db_;
};

/// Structured operator split into two sides by slot assignment; side
/// vectors are indexed lexicographically over their own slots in order.
class StructuredBilinearForm final : public BilinearForm {
 public:
  StructuredBilinearForm(std::shared_ptr<const StructuredOperator> op, std::vector<Side> slot_sides);
  Index dim_a() const override { return da_; }
  Index dim_b() const override { return db_; }
  double expectation(const ProductVector& pv) const override;
  HalfStep minimize_free_side(Side fixed, const CVector& w, const CVector& current) const override;

  /// Global vector of |u>_A |v>_B in the operator's slot order.
  CVector embed(const CVector& u, const CVector& v) const;
  /// Free side dimension up to which conditioned matrices are built explicitly.
  static constexpr Index kExplicitLimit = 64;

 private:
  CVector contract(Side fixed, const CVector& w, const CVector& global) const;
  std::shared_ptr<const StructuredOperator> op_;
  Index da_ = 1, db_ = 1;
  std::vector<Index> index_a_, index_b_;  // global index -> side index
};

/// Multi-start see-saw for inf <u,v|X|u,v>. The value is an upper bound on
/// the true infimum.
MinProdResult min_product_expectation(const BilinearForm& form, const OptimizerConfig& cfg);
MinProdResult min_product_expectation(const HermitianOperator& x, const OptimizerConfig& cfg);

/// sup <u,v|X|u,v> computed as -minprod(-X); argmin holds the maximizer.
MinProdResult max_product_expectation(const HermitianOperator& x, const OptimizerConfig& cfg);

/// Brute-force oracle for dA = 2, dB in {2, 3}. u sweeps a resolution x
/// resolution grid of the Bloch sphere; each grid point is paired with the
/// exact best v (smallest eigenvalue of the conditioned matrix).
double grid_oracle_minprod(const HermitianOperator& x, int resolution);

/// Distinct product vectors with |<u,v|W|u,v>| <= tol_zero found by see-saw
/// from independent seeds.
std::vector<ProductVector> collect_zero_products(const HermitianOperator& w, const OptimizerConfig& cfg);

/// Numerical rank of the stacked |u>|v> vectors (threshold 1e-8 * sigma_max).
Index spanning_rank(const std::vector<ProductVector>& zeros, Index da, Index db);

}  // namespace wf
