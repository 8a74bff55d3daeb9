#include "wf/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wf/random.hpp"
#include "wf/witness.hpp"

namespace wf {

namespace {

constexpr int kSymmetryProbes = 50;
constexpr double kSymmetryTol = 1e-10;
inline constexpr Index kLiftBudget = 1 << 20;

void require_pair_layout(const StructuredOperator& y) {
  const auto& d = y.space_dims();
  if (d.size() != 4 || d[0] != d[1] || d[2] != d[3]) {
    throw DimensionError("lifted operators live on four slots [d1, d1, d2, d2]");
  }
}

LiftedWitness finish_lift(StructuredOperator y, Index d, LiftSource source, std::optional<double> constant,
                          std::uint64_t seed) {
  const double defect = symmetry_defect(y, kSymmetryProbes, seed);
  if (defect > kSymmetryTol) {
    throw std::logic_error("lifted operator failed the P^sym Y P^sym = Y probe");
  }
  LiftedWitness lw;
  lw.y_norm = structured_norm(y, seed);
  lw.constant = constant.value_or(2.0 * lw.y_norm);
  if (lw.constant < lw.y_norm - 1e-9) {
    throw std::invalid_argument("lift constant must be at least ||Y||_inf");
  }
  StructuredOperator full = y + lift_sym_projector(d, -1.0).scaled(lw.constant);
  lw.y = std::make_shared<const StructuredOperator>(std::move(y));
  lw.op = std::make_shared<const StructuredOperator>(std::move(full));
  lw.source = std::move(source);
  lw.space = {d * d, d * d};
  lw.slot_sides = kLiftSlotSides;
  return lw;
}

}  // namespace

StructuredOperator lift_sym_projector(Index d, double sign) { return pair_sym_projector(d, d, sign); }

double symmetry_defect(const StructuredOperator& y, int probes, std::uint64_t seed) {
  require_pair_layout(y);
  const auto& d = y.space_dims();
  const StructuredOperator p = pair_sym_projector(d[0], d[2], 1.0);
  Rng rng = make_stream(seed, 0x73796d);
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const CVector x = random_unit_vector(y.dim(), rng);
    const CVector yx = y.apply(x);
    const CVector pyp = p.apply(y.apply(p.apply(x)));
    worst = std::max(worst, (pyp - yx).norm() / std::max(1.0, yx.norm()));
  }
  return worst;
}

double structured_norm(const StructuredOperator& s, std::uint64_t seed) {
  LanczosOptions opts;
  opts.tol = 1e-8;
  opts.scale = 1e-300;
  opts.krylov_dim = 60;
  opts.max_cycles = 30;
  MatVec mv = [&s](const CVector& x) -> CVector { return s.apply(x); };
  return lanczos_norm(mv, s.dim(), seed, opts);
}

double lemma3_constant(const StructuredOperator& y, Lemma3Regime regime, std::uint64_t seed) {
  if (symmetry_defect(y, kSymmetryProbes, seed) > kSymmetryTol) {
    throw std::invalid_argument("Y is not invariant under the symmetric projector");
  }
  const double norm = structured_norm(y, seed);
  return regime == Lemma3Regime::Witness ? norm : 2.0 * norm;
}

LiftedWitness lift_witness(const HermitianOperator& w, std::optional<double> constant, const OptimizerConfig& cfg) {
  if (w.dims().size() != 2) throw DimensionError("lift_witness needs a bipartite operator");
  const Index d = w.dim();
  if (d * d * d * d > kLiftBudget) throw DimensionError("lifted dimension exceeds the structured budget");
  const ClassificationReport rep = classify(w, cfg);
  if (!rep.is_witness) throw std::invalid_argument("lift_witness: source operator is not a witness");

  const Atom wa = Atom::dense(w.matrix());
  StructuredOperator y({d, d, d, d});
  y.add_term(0.5, Layer{wa, wa, wa, wa});
  y.add_term(0.5, std::vector<Layer>{Layer{wa, wa, wa, wa}, Layer{Atom::swap(d), Atom::swap(d)}});
  LiftSource src{LiftSource::Kind::Witness, w, 0.0, 0.0, 0.0};
  return finish_lift(std::move(y), d, std::move(src), constant, cfg.seed);
}

StateLiftParts state_lift_parts(const HermitianOperator& rho, double alpha, double beta, double gamma) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("alpha, beta and gamma must be positive");
  }
  if (rho.dims().size() != 2) throw DimensionError("lift_state needs a bipartite state");
  if (std::abs(rho.trace() - 1.0) > 1e-10 || min_eigenvalue(rho) < -1e-10) {
    throw std::invalid_argument("rho must be a unit-trace PSD state");
  }
  const Index d = rho.dim();
  const Index n = d * d;
  if (n * n * n * n > kLiftBudget) throw DimensionError("lifted dimension exceeds the structured budget");
  const std::vector<Index> slots{n, n, n, n};
  const Atom rr = Atom::dense(tensor(rho, rho).matrix());
  const Atom id = Atom::identity(n);

  StructuredOperator a_alpha(slots);
  a_alpha.add_term(alpha, Layer{rr, rr, Atom::classical_projector(n)});
  StructuredOperator a_beta(slots);
  a_beta.add_term(beta, Layer{id, id, Atom::swap(n)});
  a_beta.add_term(-beta, Layer{id, id, Atom::classical_projector(n)});
  StructuredOperator a_gamma(slots);
  a_gamma.add_term(gamma, Layer{id, id, Atom::classical_projector(n)});
  a_gamma.add_term(-gamma / static_cast<double>(n * n), identity_layer(slots));
  return {std::move(a_alpha), std::move(a_beta), std::move(a_gamma)};
}

LiftedWitness lift_state(const HermitianOperator& rho, double alpha, double beta, double gamma,
                         std::optional<double> constant, const OptimizerConfig& cfg) {
  const StateLiftParts parts = state_lift_parts(rho, alpha, beta, gamma);
  const Index n = rho.dim() * rho.dim();
  const StructuredOperator p = lift_sym_projector(n, 1.0);
  // A' commutes with P'^sym, so P'^sym A' P'^sym = A' P'^sym
  StructuredOperator y = compose(parts.a(), p);
  LiftSource src{LiftSource::Kind::State, rho, alpha, beta, gamma};
  return finish_lift(std::move(y), n, std::move(src), constant, cfg.seed);
}

RitzPair lifted_negative_direction(const LiftedWitness& lw, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0x6e6567);
  LanczosOptions opts;
  opts.tol = 1e-8;
  opts.scale = std::max(lw.constant, 1e-300);
  opts.max_cycles = 30;
  const auto op = lw.op;
  MatVec mv = [op](const CVector& x) -> CVector { return op->apply(x); };
  return lanczos_smallest(mv, random_unit_vector(op->dim(), rng), opts);
}

CVector symmetric_product(const LiftedWitness& lw, const CVector& u) { return lw.form().embed(u, u); }

double two_copy_expectation_formula(const HermitianOperator& w, const CVector& u) {
  const Index d = w.dim();
  if (u.size() != d * d) throw DimensionError("u must live on two copies of the source space");
  const CMatrix ww = tensor(w, w).matrix();
  CVector vu(u.size());
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) vu(i * d + j) = u(j * d + i);
  }
  const Complex direct = u.dot(ww * u);
  const Complex swapped = u.dot(ww * vu);
  return 0.5 * (direct * direct).real() + 0.5 * (swapped * swapped).real();
}

}  // namespace wf
