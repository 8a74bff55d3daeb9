#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "wf/hermitian.hpp"
#include "wf/optimize.hpp"

namespace wf {

struct ClassificationReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  std::optional<CVector> negative_eigenvector;  // set when min_eigenvalue < -tol_zero
  MinProdResult minprod;
  bool is_witness = false;
  bool weakly_optimal = false;
  std::optional<ProductVector> zero_product;  // set when weakly_optimal
  double tol_zero = 0.0;                       // tolerance the verdicts used
  /// The see-saw did not converge, so the product-side verdicts are heuristic.
  bool heuristic() const { return !minprod.converged; }
};

/// witness <=> minprod >= -tol_zero and lambda_min < -tol_zero;
/// weakly optimal <=> witness and |minprod| <= tol_zero.
ClassificationReport classify(const HermitianOperator& x, const OptimizerConfig& cfg);

enum class SeparabilityEvidence { PptVerified, CallerAsserted, BallCriterion };

const char* to_string(SeparabilityEvidence e);

/// sigma - c I (or c I - sigma when dual) with the data that validated it.
struct CanonicalWitness {
  HermitianOperator sigma;
  double c = 0.0;
  HermitianOperator op;
  SeparabilityEvidence evidence = SeparabilityEvidence::CallerAsserted;
  bool dual = false;
  double lambda_bound = 0.0;  // lambda_min(sigma), or lambda_max(sigma) for the dual form
  double threshold = 0.0;     // minprod(sigma), or maxprod(sigma) for the dual form
};

class WitnessWindowError : public std::invalid_argument {
 public:
  enum class Reason { NotPsd, NotSeparable, NoWitness, NegativeOnProduct };
  WitnessWindowError(Reason reason, const std::string& what, std::optional<ProductVector> violating = std::nullopt)
      : std::invalid_argument(what), reason_(reason), violating_(std::move(violating)) {}
  Reason reason() const { return reason_; }
  /// Product vector with negative expectation when reason is NegativeOnProduct.
  const std::optional<ProductVector>& violating() const { return violating_; }

 private:
  Reason reason_;
  std::optional<ProductVector> violating_;
};

/// Decides the separability evidence for sigma. PPT decides when
/// dA*dB <= 6; above that the ball ||sigma/tr - I/d||_2 <= 1/sqrt(d(d-1))
/// is tried, then the caller's assertion. Throws WitnessWindowError on
/// non-PSD or non-separable input.
SeparabilityEvidence separability_evidence(const HermitianOperator& sigma, bool caller_asserts_separable);

/// sigma - c I with lambda_min(sigma) < c <= minprod(sigma) + tol_zero.
CanonicalWitness witness_from_separable(const HermitianOperator& sigma, double c, const OptimizerConfig& cfg,
                                        bool caller_asserts_separable = false);

/// c I - sigma with maxprod(sigma) - tol_zero <= c < lambda_max(sigma).
CanonicalWitness dual_witness_from_separable(const HermitianOperator& sigma, double c, const OptimizerConfig& cfg,
                                             bool caller_asserts_separable = false);

struct Theorem1Report {
  double cmax = 0.0;
  double lambda_min_pt = 0.0;
  bool agree = false;  // |cmax - lambda_min(sigma^T_B)| <= 1e-6
  // dual relation
  double cmin = 0.0;
  double lambda_max_pt = 0.0;
  bool dual_agree = false;  // |cmin - lambda_max(sigma^T_B)| <= 1e-6
  // branch data for sigma - cmax I
  double lambda_min_sigma = 0.0;
  bool witness_pt_psd = false;  // (sigma - cmax I)^T_B >= 0
  /// Open interval (max(lambda_min(sigma), lambda_min(sigma^T_B)), cmax) where
  /// sigma - tI and its partial transpose are both witnesses; empty when lo >= hi.
  double window_lo = 0.0;
  double window_hi = 0.0;
};

inline constexpr double kTheoremTol = 1e-6;

Theorem1Report check_theorem1(const HermitianOperator& sigma, const OptimizerConfig& cfg);

struct Corollary3Report {
  double minprod_sigma = 0.0;
  double minprod_pt = 0.0;
  double gap = 0.0;
  bool pass = false;  // gap <= 1e-6
};

Corollary3Report check_corollary3(const HermitianOperator& sigma, const OptimizerConfig& cfg);

enum class Fineness { Finer, NotFiner, Undetermined };

const char* to_string(Fineness f);

struct FinenessResult {
  Fineness verdict = Fineness::Undetermined;
  std::optional<HermitianOperator> counterexample;  // detected by first, not by second
  int detected_samples = 0;
};

/// Is w2 finer than w1 (every state detected by w1 is detected by w2)?
/// Exact for canonical witnesses over the same sigma and orientation;
/// throws std::invalid_argument otherwise.
FinenessResult is_finer(const CanonicalWitness& w1, const CanonicalWitness& w2);

/// General operators: equality up to scale or w1 - w2 >= 0 proves
/// fineness; otherwise `samples` detected states of w1 are tested for a
/// counterexample, and no counterexample means Undetermined.
FinenessResult is_finer(const HermitianOperator& w1, const HermitianOperator& w2, const OptimizerConfig& cfg,
                        int samples);

/// Zero-set relation between P and W's zero products: (i) P vanishes at
/// some zero product of W; (ii) it does not and leaves part of the
/// negative eigenspace uncovered; (iii) it does not and covers it.
enum class PerturbationClass { InZeroSpan, OutsideNotCovering, OutsideCovering };

const char* to_string(PerturbationClass c);

struct PerturbationReport {
  ClassificationReport base;    // classification of W
  ClassificationReport result;  // classification of W +- P
  /// <u,v|P|u,v> <= tol_zero at W's stored zero product; false when W has none.
  bool vanishes_at_zero_product = false;
  /// Class computed from collected zero products; empty when W is negative
  /// on some product vector or has no zero products.
  std::optional<PerturbationClass> zero_set_class;
  bool orthogonal_to_negative_space = false;  // P e = 0 for every negative eigenvector e
  bool covers_negative_space = false;         // every negative eigenvector lies in supp P
  bool witness_survives = false;
  bool weak_optimality_survives = false;
};

/// Classifies W + P for PSD, nonzero P.
PerturbationReport perturb_add_positive(const HermitianOperator& w, const HermitianOperator& p,
                                        const OptimizerConfig& cfg);

/// Classifies W - Q for PSD, nonzero Q.
PerturbationReport perturb_subtract_positive(const HermitianOperator& w, const HermitianOperator& q,
                                             const OptimizerConfig& cfg);

/// max{0, -min_W tr(W rho)} over a finite witness list.
double quantify_over_set(const HermitianOperator& rho, const std::vector<HermitianOperator>& witnesses);

struct HyperplaneForm {
  HermitianOperator sigma;
  double c_prime;  // W = sigma - c' I/d
};

HyperplaneForm to_hyperplane_form(const CanonicalWitness& cw);
HermitianOperator from_hyperplane_form(const HyperplaneForm& h);

}  // namespace wf
