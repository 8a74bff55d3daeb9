#include <algorithm>
#include <cmath>

#include "test_support.hpp"
#include "wf/families.hpp"
#include "wf/registry.hpp"
#include "wf/witness.hpp"

using namespace wf;

namespace {

OptimizerConfig config(std::uint64_t seed = 0, int restarts = 32) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  return cfg;
}

double entry(const HermitianOperator& x, Index i, Index j) { return x.matrix()(i, j).real(); }

}  // namespace

TEST_CASE("two-qubit reference states") {
  const HermitianOperator s1 = sigma1();
  CHECK(entry(s1, 0, 0) == 1.0);
  CHECK(entry(s1, 1, 2) == 0.5);
  CHECK(entry(s1, 3, 3) == 1.0);
  CHECK(s1.dims() == std::vector<Index>{2, 2});
  CHECK(std::abs(min_eigenvalue(sigma2().shifted(-0.6)) - min_eigenvalue(s1.shifted(-0.5))) <= 1e-12);
  CHECK(sigma2().shifted(-0.6).max_abs_diff(s1.shifted(-0.5)) <= 1e-15);

  const CVector b = bell_vector();
  CHECK(std::abs(b.norm() - 1.0) <= 1e-15);
  CHECK(std::abs(std::abs(b(0)) - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(bell_projector().trace() - 1.0) <= 1e-15);
}

TEST_CASE("Werner and isotropic families") {
  CHECK(werner_state(0.0).max_abs_diff(HermitianOperator::identity({2, 2}).scaled(0.25)) == 0.0);
  CHECK(werner_state(1.0).max_abs_diff(bell_projector()) <= 1e-15);
  CHECK_THROWS_AS(werner_state(1.5), std::invalid_argument);

  const double q = -0.2;
  const HermitianOperator s = isotropic_sigma(q, false);
  CHECK(std::abs(entry(s, 0, 0) - (1.0 + q) / 4.0) <= 1e-15);
  CHECK(std::abs(entry(s, 1, 1) - (1.0 - q) / 4.0) <= 1e-15);
  CHECK(std::abs(entry(s, 0, 3) - q / 2.0) <= 1e-15);
  CHECK(isotropic_witness(q, false).max_abs_diff(s.shifted(-(1.0 + q) / 4.0)) <= 1e-15);

  const HermitianOperator sp = isotropic_sigma(q, true);
  CHECK(std::abs(entry(sp, 0, 2) + q / 2.0) <= 1e-15);
  CHECK(std::abs(entry(sp, 3, 1) + q / 2.0) <= 1e-15);
  CHECK(std::abs(entry(sp, 1, 3) + q / 2.0) <= 1e-15);
  CHECK_THROWS_AS(isotropic_witness(0.5, false), std::invalid_argument);
  CHECK_THROWS_AS(isotropic_witness(-0.5, false), std::invalid_argument);
}

TEST_CASE("Werner detection identity on a grid") {
  double worst = 0.0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      const double p = i / 10.0;
      const double q = -j / 30.0 + 1e-9;  // inside (-1/3, 0)
      const double value = isotropic_witness(q, false).trace_product(werner_state(p));
      worst = std::max(worst, std::abs(value - (3.0 * p - 1.0) * q / 4.0));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Choi witness entries and eigenvectors") {
  const WxyzResult w = w_xyz(1, 1, 0);
  CHECK(w.condition_met);
  const double diag[9] = {1, 1, 0, 0, 1, 1, 1, 0, 1};
  for (Index i = 0; i < 9; ++i) CHECK(entry(w.op, i, i) == diag[i]);
  CHECK(entry(w.op, 0, 4) == -1.0);
  CHECK(entry(w.op, 8, 0) == -1.0);
  CHECK(entry(w.op, 1, 3) == 0.0);

  const double values[9] = {-1, 0, 0, 0, 1, 1, 1, 2, 2};
  for (int k = 0; k < 9; ++k) {
    const CVector v = choi_eigenvector(k);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-15);
    CHECK((w.op.matrix() * v - values[k] * v).norm() <= 1e-14);
  }
  CHECK_THROWS_AS(choi_eigenvector(9), std::out_of_range);

  CHECK(choi_sigma().max_abs_diff(w.op.shifted(2.0)) == 0.0);
  CHECK(std::abs(choi_q0().trace() - 1.5) <= 1e-14);
  CHECK(std::abs(choi_q1().trace() - 2.0) <= 1e-14);
  CHECK(min_eigenvalue(choi_q0()) >= -1e-15);
  CHECK_THROWS_AS(w_xyz(-1, 1, 1), std::invalid_argument);
}

TEST_CASE("w_xyz conditions agree with classification on robust samples") {
  Rng rng = make_stream(71, 0);
  std::uniform_real_distribution<double> dist(0.0, 2.0);
  int witnesses = 0, rejects = 0;
  const double delta = 0.05;
  for (int k = 0; k < 120 && (witnesses < 10 || rejects < 10); ++k) {
    const double x = dist(rng), y = dist(rng), z = dist(rng);
    const bool c = wxyz_condition(x, y, z);
    bool robust = x < 2.0 - delta;
    for (double dx : {-delta, delta}) {
      for (double dy : {-delta, delta}) {
        for (double dz : {-delta, delta}) {
          robust = robust && wxyz_condition(std::max(x + dx, 0.0), std::max(y + dy, 0.0), std::max(z + dz, 0.0)) == c;
        }
      }
    }
    if (!robust) continue;
    const WxyzResult w = w_xyz(x, y, z);
    CHECK(w.condition_met == c);
    const ClassificationReport r = classify(w.op, config(static_cast<std::uint64_t>(k)));
    CHECK(r.is_witness == c);
    (c ? witnesses : rejects)++;
  }
  CHECK(witnesses >= 10);
  CHECK(rejects >= 10);
}

TEST_CASE("W_Q example") {
  const WqExample wq = wq_parts(1.0, 2.0);
  CHECK(wq.w.max_abs_diff(wq.q1 + partial_transpose(wq.q2, 1)) <= 1e-15);
  CHECK(wq.w_opt.max_abs_diff(partial_transpose(wq.q2, 1)) <= 1e-15);
  CHECK(min_eigenvalue(wq.q1) >= -1e-15);
  CHECK(min_eigenvalue(wq.q2) >= -1e-15);
  CHECK(std::abs(product_expectation(wq.w, wq.zero)) <= 1e-12);
  CHECK(wq_example(1.0, 2.0).max_abs_diff(wq.w) == 0.0);
}

TEST_CASE("three-by-three perturbation example") {
  const C3Example c = c3_example();
  CHECK(c.w.max_abs_diff(c.r1 + partial_transpose(c.r2, 1) + c.q) <= 1e-15);
  CHECK(c.w1.max_abs_diff(c.w + c.p) <= 1e-15);
  CHECK(c.w2.max_abs_diff(c.w - c.q) <= 1e-15);
  for (const auto* m : {&c.r1, &c.r2, &c.p, &c.q}) CHECK(min_eigenvalue(*m) >= -1e-15);
  CHECK(std::abs(min_eigenvalue(partial_transpose(c.r2, 1)) + 1.0 / 3.0) <= 1e-12);
}

TEST_CASE("lift example and Bell partial transpose families") {
  const HermitianOperator w = lift_example_witness();
  CHECK(std::abs(operator_norm(w) - 0.375) <= 1e-15);
  CHECK(classify(w, config()).is_witness);

  const HermitianOperator b = bell_pt_plus_q(bell_pt_default_q());
  CHECK(b.dims() == std::vector<Index>{2, 3});
  CHECK(std::abs(min_eigenvalue(b) + 0.5) <= 1e-12);
  CHECK(std::abs(bell_pt_negative_projector().trace() - 1.0) <= 1e-15);
  CHECK(std::abs(b.trace_product(bell_pt_negative_projector()) + 0.5) <= 1e-12);

  Rng rng = make_stream(72, 0);
  const std::vector<Index> support{0, 1, 3, 4};
  for (int k = 0; k < 20; ++k) {
    const HermitianOperator g = random_density_matrix({4}, rng);
    CMatrix q = CMatrix::Zero(6, 6);
    for (Index i = 0; i < 4; ++i) {
      for (Index j = 0; j < 4; ++j) q(support[i], support[j]) = g.matrix()(i, j);
    }
    const HermitianOperator w = bell_pt_plus_q(HermitianOperator({2, 3}, q));
    CHECK(std::abs(w.matrix()(2, 2)) <= 1e-15);  // <02|W|02>
  }

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(6, 6);
  bad(2, 2) = 1.0;  // |02> lies outside the allowed support
  CHECK_THROWS_AS(bell_pt_plus_q(HermitianOperator::real({2, 3}, bad)), std::invalid_argument);
  CHECK_THROWS_AS(bell_pt_plus_q(HermitianOperator::identity({2, 3}).scaled(-1.0)), std::invalid_argument);
}

TEST_CASE("named families") {
  const std::vector<std::string> names = family_names();
  CHECK(names.size() >= 10);
  for (const auto& name : names) CHECK_NOTHROW(named_family(name));
  CHECK(named_family("w-xyz", {1.5, 1.5, 0.5}).max_abs_diff(w_xyz(1.5, 1.5, 0.5).op) == 0.0);
  CHECK(named_family("werner", {0.3}).max_abs_diff(werner_state(0.3)) == 0.0);
  CHECK_THROWS_AS(named_family("no-such-family"), std::invalid_argument);
}

TEST_CASE("reproduction registry") {
  const std::vector<PaperCase> cases = paper_registry();
  CHECK(cases.size() >= 10);
  for (const char* name : {"sigma1-cmax", "sigma2-cmax", "choi-eigenvalues", "choi-cmax", "werner-detection",
                           "wq-zero-product", "lift-witness", "lift-witness-sign", "choi-nondecomposable"}) {
    CHECK_NOTHROW(find_case(cases, name));
  }
  CHECK_THROWS_AS(find_case(cases, "missing"), std::invalid_argument);
  const CaseOutcome o = run_case(find_case(cases, "sigma1-cmax"), config());
  CHECK(o.status == CaseStatus::Pass);
  CHECK(!o.rows.empty());
  for (const auto& row : o.rows) CHECK(row.provenance == "reference");

  const CaseOutcome sign = run_case(find_case(cases, "lift-witness-sign"), config());
  CHECK(sign.status == CaseStatus::DocumentedDiscrepancy);
}
