#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "test_support.hpp"
#include "wf/families.hpp"

using namespace wf;
using wf::test::diag_op;

TEST_CASE("construction rejects non-Hermitian and mis-sized matrices") {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator({2, 2}, m), std::invalid_argument);
  CHECK_THROWS_AS(HermitianOperator({2, 3}, CMatrix::Identity(4, 4)), DimensionError);
  CHECK_THROWS_AS(HermitianOperator({2, 2}, CMatrix::Identity(4, 3)), DimensionError);
  CMatrix tiny = CMatrix::Identity(4, 4);
  tiny(0, 1) = 1e-13;  // within tol_herm
  CHECK_NOTHROW(HermitianOperator({2, 2}, tiny));
}

TEST_CASE("partial transpose examples") {
  const HermitianOperator d = diag_op({2, 2}, {0.1, 0.2, 0.3, 0.4});
  CHECK(partial_transpose(d, 1).max_abs_diff(d) == 0.0);

  const HermitianOperator flip = partial_transpose(bell_projector(), 1);
  CHECK(min_eigenvalue(flip) == doctest::Approx(-0.5).epsilon(1e-12));

  CHECK(min_eigenvalue(partial_transpose(sigma1(), 1)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(partial_transpose(d, 2), DimensionError);
}

TEST_CASE("partial transpose moves |00><11| to |01><10|") {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 3) = m(3, 0) = 1.0;
  const HermitianOperator pt = partial_transpose(HermitianOperator({2, 2}, m), 1);
  CHECK(std::abs(pt.matrix()(1, 2) - 1.0) == 0.0);
  CHECK(std::abs(pt.matrix()(0, 3)) == 0.0);
  const HermitianOperator pta = partial_transpose(HermitianOperator({2, 2}, m), 0);
  CHECK(std::abs(pta.matrix()(2, 1) - 1.0) == 0.0);
}

TEST_CASE("partial transpose is an involution and preserves trace") {
  Rng rng = make_stream(11, 0);
  for (const auto& dims : {std::vector<Index>{2, 2}, {2, 3}, {3, 3}, {3, 2}}) {
    for (int k = 0; k < 10; ++k) {
      const HermitianOperator x = random_hermitian(dims, rng);
      for (std::size_t f = 0; f < 2; ++f) {
        const HermitianOperator pt = partial_transpose(x, f);
        CHECK(partial_transpose(pt, f).max_abs_diff(x) == 0.0);
        CHECK(std::abs(pt.trace() - x.trace()) <= 1e-12);
      }
    }
  }
}

TEST_CASE("tensor products") {
  const HermitianOperator i2 = HermitianOperator::identity({2});
  CHECK(tensor(i2, i2).max_abs_diff(HermitianOperator::identity({2, 2})) == 0.0);
  const HermitianOperator k = tensor(diag_op({2}, {1, 2}), diag_op({2}, {3, 4}));
  CHECK(k.max_abs_diff(diag_op({2, 2}, {3, 4, 6, 8})) == 0.0);
  CHECK(k.dims() == std::vector<Index>{2, 2});

  const HermitianOperator w = lift_example_witness();
  CHECK(operator_norm(w) == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  const HermitianOperator w4 = tensor(tensor(w, w), tensor(w, w));
  CHECK(std::abs(operator_norm(w4) - 81.0 / 4096.0) <= 1e-14);

  const HermitianOperator big = HermitianOperator::identity({65});
  CHECK_THROWS_AS(tensor(big, big), DimensionError);
}

TEST_CASE("tensor agrees with the Eigen Kronecker product") {
  Rng rng = make_stream(12, 0);
  const HermitianOperator a = random_hermitian({2}, rng);
  const HermitianOperator b = random_hermitian({3}, rng);
  const CMatrix oracle = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  CHECK((tensor(a, b).matrix() - oracle).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("eigendecomposition examples and residuals") {
  const Spectrum s4 = eig_hermitian(HermitianOperator::identity({2, 2}));
  for (Index k = 0; k < 4; ++k) CHECK(s4.eigenvalues(k) == doctest::Approx(1.0));

  const Spectrum sc = eig_hermitian(w_xyz(1, 1, 0).op);
  const double expected[9] = {-1, 0, 0, 0, 1, 1, 1, 2, 2};
  for (int k = 0; k < 9; ++k) CHECK(std::abs(sc.eigenvalues(k) - expected[k]) <= 1e-9);

  CHECK(std::abs(min_eigenvalue(partial_transpose(choi_sigma(), 1)) - (5.0 - std::sqrt(5.0)) / 2.0) <= 1e-9);

  Rng rng = make_stream(13, 0);
  for (int t = 0; t < 10; ++t) {
    const HermitianOperator x = random_hermitian({3, 3}, rng);
    const Spectrum s = eig_hermitian(x);
    const double norm = operator_norm(x);
    for (Index k = 0; k < s.eigenvalues.size(); ++k) {
      CHECK((x.matrix() * s.eigenvectors.col(k) - s.eigenvalues(k) * s.eigenvectors.col(k)).norm() <= 1e-9 * norm);
      if (k > 0) CHECK(s.eigenvalues(k - 1) <= s.eigenvalues(k));
    }
    CHECK((s.eigenvectors.adjoint() * s.eigenvectors - CMatrix::Identity(9, 9)).norm() <= 1e-12);
  }
}

TEST_CASE("product expectation examples") {
  Rng rng = make_stream(14, 0);
  const ProductVector pv = random_product_vector(2, 3, rng);
  CHECK(product_expectation(HermitianOperator::identity({2, 3}), pv) == doctest::Approx(1.0).epsilon(1e-14));

  const WqExample wq = wq_parts(1.0, 1.0);
  CHECK(std::abs(product_expectation(wq.w, wq.zero)) <= 1e-12);

  const ProductVector zz(CVector::Unit(2, 0), CVector::Unit(2, 0));
  CHECK(std::abs(product_expectation(isotropic_witness(-0.25, false), zz)) <= 1e-15);

  CHECK_THROWS_AS(product_expectation(HermitianOperator::identity({2, 2}), pv), DimensionError);
}

TEST_CASE("product vectors are normalized on construction") {
  ProductVector pv(CVector::Constant(2, Complex(3.0, 0.0)), CVector::Constant(3, Complex(0.0, 2.0)));
  CHECK(std::abs(pv.u.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(pv.v.norm() - 1.0) <= 1e-12);
  CHECK_THROWS(ProductVector(CVector::Zero(2), CVector::Unit(2, 0)));
}

TEST_CASE("conditioned matrix examples and consistency") {
  Rng rng = make_stream(15, 0);
  const CVector w = random_unit_vector(2, rng);
  CHECK((conditioned_matrix(HermitianOperator::identity({2, 2}), Side::A, w) - CMatrix::Identity(2, 2)).norm() <=
        1e-14);

  const CMatrix m0 = conditioned_matrix(sigma1(), Side::A, CVector::Unit(2, 0));
  CHECK(std::abs(m0(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(m0(1, 1) - 0.5) <= 1e-15);
  CHECK(std::abs(m0(0, 1)) <= 1e-15);

  const HermitianOperator x = random_hermitian({2, 3}, rng);
  for (int k = 0; k < 100; ++k) {
    const CVector a = random_unit_vector(2, rng);
    const CVector b = random_unit_vector(3, rng);
    const CMatrix ma = conditioned_matrix(x, Side::A, a);
    const CMatrix mb = conditioned_matrix(x, Side::B, b);
    CHECK((ma - ma.adjoint()).norm() <= 1e-14);
    CHECK(std::abs(b.dot(ma * b).real() - product_expectation(x, ProductVector(a, b))) <= 1e-12);
    CHECK(std::abs(a.dot(mb * a).real() - product_expectation(x, ProductVector(a, b))) <= 1e-12);
  }
}

TEST_CASE("partial transpose conjugation identity on product vectors") {
  Rng rng = make_stream(16, 0);
  for (const auto& dims : {std::vector<Index>{2, 2}, {2, 3}, {3, 3}}) {
    for (int k = 0; k < 20; ++k) {
      const HermitianOperator x = random_hermitian(dims, rng);
      const ProductVector pv = random_product_vector(dims[0], dims[1], rng);
      const ProductVector conj(pv.u, pv.v.conjugate());
      CHECK(std::abs(product_expectation(partial_transpose(x, 1), pv) - product_expectation(x, conj)) <= 1e-12);
    }
  }
}

TEST_CASE("factor permutations") {
  Rng rng = make_stream(17, 0);
  const HermitianOperator a = random_hermitian({2}, rng);
  const HermitianOperator b = random_hermitian({3}, rng);
  CHECK(swap_factors(tensor(a, b)).max_abs_diff(tensor(b, a)) <= 1e-15);
  const HermitianOperator c = random_hermitian({2}, rng);
  const HermitianOperator abc = tensor(tensor(a, b), c);
  CHECK(permute_factors(abc, {2, 0, 1}).max_abs_diff(tensor(tensor(c, a), b)) <= 1e-15);
}

TEST_CASE("Hermitian arithmetic") {
  const HermitianOperator s = sigma1();
  CHECK((s - s).matrix().norm() == 0.0);
  CHECK(s.shifted(-0.5).max_abs_diff(s - HermitianOperator::identity({2, 2}).scaled(0.5)) == 0.0);
  CHECK((2.0 * s).max_abs_diff(s + s) == 0.0);
  CHECK(s.trace() == doctest::Approx(3.0));
  CHECK(s.trace_product(HermitianOperator::identity({2, 2})) == doctest::Approx(3.0));
  CHECK_THROWS_AS(s + choi_sigma(), DimensionError);
}
