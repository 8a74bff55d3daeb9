#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "wf/hermitian.hpp"
#include "wf/lanczos.hpp"
#include "wf/optimize.hpp"
#include "wf/structured.hpp"

namespace wf {

struct LiftSource {
  enum class Kind { Witness, State };
  Kind kind = Kind::Witness;
  HermitianOperator op{std::vector<Index>{1}, CMatrix::Zero(1, 1)};  // W or rho
  double alpha = 0.0, beta = 0.0, gamma = 0.0;  // state lifts only
};

/// A lifted operator Y + C P^asym on four slots [d, d, d, d]. P^sym swaps
/// slot 0 with 1 and slot 2 with 3, so the product structure it
/// symmetrizes is side A = slots {0, 2} against side B = slots {1, 3}.
struct LiftedWitness {
  std::shared_ptr<const StructuredOperator> op;  // Y + C P^asym
  std::shared_ptr<const StructuredOperator> y;   // P^sym-invariant part
  LiftSource source;
  double constant = 0.0;
  double y_norm = 0.0;
  std::vector<Index> space;         // {dim side A, dim side B}
  std::vector<Side> slot_sides;     // {A, B, A, B}

  StructuredBilinearForm form() const { return StructuredBilinearForm(op, slot_sides); }
};

inline const std::vector<Side> kLiftSlotSides{Side::A, Side::B, Side::A, Side::B};

/// P^sym (sign +1) or P^asym (sign -1) on slots [d, d, d, d].
StructuredOperator lift_sym_projector(Index d, double sign);

/// max ||P Y P x - Y x|| / max(1, ||Y x||) over random probes, P = P^sym of Y's slot layout.
double symmetry_defect(const StructuredOperator& y, int probes, std::uint64_t seed);

/// ||S||_inf by Lanczos on both spectrum ends, relative tolerance 1e-8.
double structured_norm(const StructuredOperator& s, std::uint64_t seed);

enum class Lemma3Regime { Witness, Gap };

/// ||Y||_inf (Witness) or 2 ||Y||_inf (Gap) for P^sym-invariant Y on
/// slots [d1, d1, d2, d2]. Throws std::invalid_argument if the symmetry
/// probe fails.
double lemma3_constant(const StructuredOperator& y, Lemma3Regime regime, std::uint64_t seed = 0);

/// Y' = 1/2 (W^{x4} + W^{x4} (V (x) V)) plus C P^asym, default C = 2 ||Y'||.
/// W must classify as a witness.
LiftedWitness lift_witness(const HermitianOperator& w, std::optional<double> constant, const OptimizerConfig& cfg);

/// The three weighted parts of A' on slots [N, N, N, N], N = (dA dB)^2.
struct StateLiftParts {
  StructuredOperator alpha_part;  // alpha rho^{x4} (x) P'_cl
  StructuredOperator beta_part;   // beta I (x) (V' - P'_cl)
  StructuredOperator gamma_part;  // gamma I (x) (P'_cl - I'/N^2)
  StructuredOperator a() const { return alpha_part + beta_part + gamma_part; }
};

StateLiftParts state_lift_parts(const HermitianOperator& rho, double alpha, double beta, double gamma);

/// W_rho = P'^sym A' P'^sym + C P'^asym, default C = 2 ||Y'||. rho^{x4}
/// occupies slots {0, 1}, P'_cl and V' act between slots 2 and 3.
LiftedWitness lift_state(const HermitianOperator& rho, double alpha, double beta, double gamma,
                         std::optional<double> constant, const OptimizerConfig& cfg);

/// Lowest Ritz pair of the lifted operator (negative value certifies a
/// detected direction).
RitzPair lifted_negative_direction(const LiftedWitness& lw, std::uint64_t seed);

/// |u>_A |u>_B in the lifted slot order (u on slots {0,2} and on {1,3}).
CVector symmetric_product(const LiftedWitness& lw, const CVector& u);

/// 1/2 <u|W(x)W|u>^2 + 1/2 <u|(W(x)W)V|u>^2 for u on C^d (x) C^d.
double two_copy_expectation_formula(const HermitianOperator& w, const CVector& u);

}  // namespace wf
