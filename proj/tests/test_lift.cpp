#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "test_support.hpp"
#include "wf/families.hpp"
#include "wf/lift.hpp"

using namespace wf;

namespace {

OptimizerConfig config(int restarts = 16) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

CVector kron_vec(const CVector& a, const CVector& b) { return Eigen::kroneckerProduct(a, b).eval(); }

CMatrix swap_matrix(Index d) {
  CMatrix v = CMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
  }
  return v;
}

}  // namespace

TEST_CASE("lifted two-qubit witness constants") {
  const LiftedWitness lw = lift_witness(lift_example_witness(), std::nullopt, config());
  CHECK(lw.space == std::vector<Index>{16, 16});
  CHECK(lw.slot_sides == kLiftSlotSides);
  CHECK(lw.op->dim() == 256);
  CHECK(std::abs(lw.y_norm - 81.0 / 4096.0) <= 1e-9);
  CHECK(std::abs(lw.constant - 162.0 / 4096.0) <= 1e-9);
  CHECK(std::abs(lemma3_constant(*lw.y, Lemma3Regime::Gap) - 162.0 / 4096.0) <= 1e-9);
  CHECK(std::abs(lemma3_constant(*lw.y, Lemma3Regime::Witness) - 81.0 / 4096.0) <= 1e-9);
  CHECK(lw.source.kind == LiftSource::Kind::Witness);
}

TEST_CASE("the lift constant scales with the fourth power") {
  const HermitianOperator w = lift_example_witness();
  const LiftedWitness a = lift_witness(w, std::nullopt, config());
  const LiftedWitness b = lift_witness(w.scaled(3.0), std::nullopt, config());
  CHECK(std::abs(b.y_norm / a.y_norm - 81.0) <= 1e-6);
  CHECK(std::abs(b.constant - 81.0 * a.constant) <= 1e-9 * b.constant);
}

TEST_CASE("lifted operator agrees with a dense Kronecker oracle") {
  const HermitianOperator w = lift_example_witness();
  const LiftedWitness lw = lift_witness(w, 0.1, config());
  const CMatrix ww = Eigen::kroneckerProduct(w.matrix(), w.matrix()).eval();
  const CMatrix w4 = Eigen::kroneckerProduct(ww, ww).eval();
  const CMatrix vv = Eigen::kroneckerProduct(swap_matrix(4), swap_matrix(4)).eval();
  const CMatrix y = 0.5 * (w4 + w4 * vv);
  const CMatrix pa = 0.5 * (CMatrix::Identity(256, 256) - vv);
  CHECK((lw.y->materialize().matrix() - y).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((lw.op->materialize().matrix() - (y + 0.1 * pa)).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(symmetry_defect(*lw.y, 20, 1) <= 1e-14);
}

TEST_CASE("two-copy expectation identity on symmetric vectors") {
  const HermitianOperator w = lift_example_witness();
  const LiftedWitness lw = lift_witness(w, std::nullopt, config());
  Rng rng = make_stream(61, 0);
  for (int k = 0; k < 100; ++k) {
    const CVector u = random_unit_vector(16, rng);
    const double lhs = lw.y->expectation(kron_vec(u, u));
    CHECK(std::abs(lhs - two_copy_expectation_formula(w, u)) <= 1e-10);
  }
  CHECK_THROWS_AS(two_copy_expectation_formula(w, CVector::Zero(4)), DimensionError);
}

TEST_CASE("lifted witness is nonnegative on product vectors and has a negative direction") {
  OptimizerConfig cfg = config(8);
  const LiftedWitness lw = lift_witness(lift_example_witness(), std::nullopt, cfg);
  const MinProdResult mp = min_product_expectation(lw.form(), cfg);
  CHECK(mp.value >= -1e-7);
  const RitzPair neg = lifted_negative_direction(lw, 3);
  CHECK(neg.value <= -1e-4);
  CHECK(std::abs(lw.op->expectation(neg.vector) / neg.vector.squaredNorm() - neg.value) <= 1e-8);

  Rng rng = make_stream(62, 0);
  for (int k = 0; k < 20; ++k) {
    const CVector u = random_unit_vector(16, rng);
    const CVector s = symmetric_product(lw, u);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
    CHECK(lw.op->expectation(s) >= -1e-12);
  }
}

TEST_CASE("the lift rejects non-witnesses and constants below the norm") {
  const OptimizerConfig cfg = config();
  CHECK_THROWS_AS(lift_witness(HermitianOperator::identity({2, 2}), std::nullopt, cfg), std::invalid_argument);
  CHECK_THROWS_AS(lift_witness(lift_example_witness(), 0.001, cfg), std::invalid_argument);
  CHECK_THROWS_AS(lift_witness(HermitianOperator::identity({4}), std::nullopt, cfg), DimensionError);
}

TEST_CASE("lift constant edge cases") {
  const StructuredOperator zero({2, 2, 2, 2});
  CHECK(lemma3_constant(zero, Lemma3Regime::Gap) == 0.0);
  const StructuredOperator ps = lift_sym_projector(2, 1.0);
  CHECK(std::abs(lemma3_constant(ps, Lemma3Regime::Witness) - 1.0) <= 1e-9);
  CHECK(std::abs(lemma3_constant(ps, Lemma3Regime::Gap) - 2.0) <= 1e-9);

  Rng rng = make_stream(63, 0);
  StructuredOperator lopsided({2, 2, 2, 2});
  lopsided.add_term(1.0, Layer{Atom::dense(random_hermitian({2}, rng)), Atom::identity(2), Atom::identity(2),
                               Atom::identity(2)});
  CHECK_THROWS_AS(lemma3_constant(lopsided, Lemma3Regime::Gap), std::invalid_argument);
  CHECK_THROWS_AS(lemma3_constant(StructuredOperator({2, 3, 2, 3}), Lemma3Regime::Gap), DimensionError);
}

TEST_CASE("state lift parts are linear in their weights") {
  const HermitianOperator rho = HermitianOperator::identity({2, 2}).scaled(0.25);
  const StateLiftParts one = state_lift_parts(rho, 1.0, 1.0, 1.0);
  const StateLiftParts mixed = state_lift_parts(rho, 2.0, 0.5, 3.0);
  CHECK(one.alpha_part.dim() == 65536);
  Rng rng = make_stream(64, 0);
  for (int k = 0; k < 3; ++k) {
    const CVector u = random_unit_vector(256, rng);
    const CVector x = kron_vec(u, u);
    const double ea = one.alpha_part.expectation(x);
    const double eb = one.beta_part.expectation(x);
    const double eg = one.gamma_part.expectation(x);
    CHECK(std::abs(one.a().expectation(x) - (ea + eb + eg)) <= 1e-10);
    CHECK(std::abs(mixed.a().expectation(x) - (2.0 * ea + 0.5 * eb + 3.0 * eg)) <= 1e-10);
  }
}

TEST_CASE("state lift input validation") {
  const HermitianOperator rho = HermitianOperator::identity({2, 2}).scaled(0.25);
  CHECK_THROWS_AS(state_lift_parts(rho, 0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(state_lift_parts(rho, 1.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(state_lift_parts(rho.scaled(2.0), 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(state_lift_parts(HermitianOperator::identity({3, 3}).scaled(1.0 / 9.0), 1.0, 1.0, 1.0),
                  DimensionError);
}
