#include <cmath>

#include "test_support.hpp"
#include "wf/families.hpp"
#include "wf/ppt.hpp"

using namespace wf;

namespace {

OptimizerConfig config(int restarts = 8) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  return cfg;
}

// Horodecki 3x3 PPT entangled state.
HermitianOperator horodecki_state(double a) {
  Eigen::MatrixXd m = a * Eigen::MatrixXd::Identity(9, 9);
  m(6, 6) = m(8, 8) = (1.0 + a) / 2.0;
  m(6, 8) = m(8, 6) = std::sqrt(1.0 - a * a) / 2.0;
  for (int i : {0, 4, 8}) {
    for (int j : {0, 4, 8}) {
      if (i != j) m(i, j) = a;
    }
  }
  return HermitianOperator::real({3, 3}, m / (8.0 * a + 1.0));
}

}  // namespace

TEST_CASE("unit trace PSD projection") {
  Rng rng = make_stream(41, 0);
  for (int k = 0; k < 10; ++k) {
    const HermitianOperator x = random_hermitian({2, 3}, rng);
    const HermitianOperator p = project_unit_trace_psd(x);
    CHECK(std::abs(p.trace() - 1.0) <= 1e-12);
    CHECK(min_eigenvalue(p) >= -1e-12);
    CHECK(project_unit_trace_psd(p).max_abs_diff(p) <= 1e-12);
  }
  const HermitianOperator rho = random_density_matrix({3, 3}, rng);
  CHECK(project_unit_trace_psd(rho).max_abs_diff(rho) <= 1e-12);
}

TEST_CASE("PSD projection clips negative eigenvalues") {
  const HermitianOperator pt_bell = partial_transpose(bell_projector(), 1);
  const HermitianOperator p = project_psd(pt_bell);
  CHECK(min_eigenvalue(p) >= -1e-14);
  CHECK(std::abs(p.trace() - 1.5) <= 1e-12);
  CHECK(project_psd(sigma1()).max_abs_diff(sigma1()) <= 1e-12);
}

TEST_CASE("the Horodecki state is PPT and seeds no violation for a PSD operator") {
  const HermitianOperator rho = horodecki_state(0.5);
  CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
  CHECK(min_eigenvalue(rho) >= -1e-12);
  CHECK(min_eigenvalue(partial_transpose(rho, 1)) >= -1e-12);
  const PPTSearchResult r = find_ppt_violation(HermitianOperator::identity({3, 3}), config(1), {rho});
  CHECK(!r.violation.has_value());
  CHECK(r.best_value >= 1.0 - 1e-9);
}

TEST_CASE("Choi witness is negative on a PPT state") {
  const HermitianOperator w = w_xyz(1, 1, 0).op;
  const PPTSearchResult r = find_ppt_violation(w, config(16));
  REQUIRE(r.violation.has_value());
  const PPTViolation& v = *r.violation;
  CHECK(v.value < -1e-4);
  CHECK(std::abs(v.value - w.trace_product(v.state)) <= 1e-12);
  CHECK(std::abs(v.state.trace() - 1.0) <= 1e-9);
  CHECK(min_eigenvalue(v.state) >= -1e-8);
  CHECK(min_eigenvalue(partial_transpose(v.state, 1)) >= -1e-8);
}

TEST_CASE("decomposable witnesses admit no PPT violation") {
  const PPTSearchResult r = find_ppt_violation(partial_transpose(bell_projector(), 1), config(4));
  CHECK(!r.violation.has_value());
  CHECK(r.best_value >= -1e-8);
  CHECK(r.restarts_run == 4);

  const PPTSearchResult z = find_ppt_violation(HermitianOperator::identity({2, 2}).scaled(0.0), config(4));
  CHECK(!z.violation.has_value());
}

TEST_CASE("decomposition of decomposable operators") {
  const OptimizerConfig cfg = config();
  const DecompositionResult psd = attempt_decomposition(sigma1(), cfg);
  REQUIRE(psd.decomposition.has_value());
  CHECK(psd.residual <= 1e-7);

  const HermitianOperator fpt = partial_transpose(bell_projector(), 1);
  const DecompositionResult flip = attempt_decomposition(fpt, cfg);
  REQUIRE(flip.decomposition.has_value());
  const Decomposition& d = *flip.decomposition;
  CHECK((d.p + partial_transpose(d.q, 1)).max_abs_diff(fpt) <= 1e-7);
  CHECK(min_eigenvalue(d.p) >= -1e-8);
  CHECK(min_eigenvalue(d.q) >= -1e-8);

  const WqExample wq = wq_parts(1.0, 2.0);
  const DecompositionResult r = attempt_decomposition(wq.w, cfg);
  REQUIRE(r.decomposition.has_value());
  CHECK(r.residual <= 1e-7);
  CHECK(r.min_eig_p >= -1e-8);
  CHECK(r.min_eig_q >= -1e-8);
}

TEST_CASE("a mixed decomposable witness needs the iterative search") {
  Rng rng = make_stream(42, 0);
  const HermitianOperator p = random_density_matrix({2, 3}, rng, 1);
  const HermitianOperator q = random_density_matrix({2, 3}, rng, 1);
  const HermitianOperator w = p + partial_transpose(q, 1);
  const DecompositionResult r = attempt_decomposition(w, config(), 50000);
  REQUIRE(r.decomposition.has_value());
  CHECK(r.residual <= 1e-7);
}

TEST_CASE("Choi witness resists decomposition") {
  const DecompositionResult r = attempt_decomposition(w_xyz(1, 1, 0).op, config(), 2000);
  CHECK(!r.decomposition.has_value());
}
