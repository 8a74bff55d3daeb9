#include "wf/families.hpp"

#include <cmath>
#include <stdexcept>

namespace wf {

namespace {

CVector ket(Index n, std::initializer_list<std::pair<Index, double>> entries) {
  CVector v = CVector::Zero(n);
  for (const auto& [i, a] : entries) v(i) = a;
  return v;
}

HermitianOperator projector_on(std::vector<Index> dims, const CVector& v) {
  return HermitianOperator::projector(std::move(dims), v);
}

double param(const std::vector<double>& params, std::size_t k, double fallback) {
  return k < params.size() ? params[k] : fallback;
}

}  // namespace

CVector bell_vector() {
  const double r = 1.0 / std::sqrt(2.0);
  return ket(4, {{0, r}, {3, r}});
}

HermitianOperator bell_projector() { return projector_on({2, 2}, bell_vector()); }

HermitianOperator werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_state: p must lie in [0, 1]");
  return bell_projector().scaled(p) + HermitianOperator::identity({2, 2}).scaled((1.0 - p) / 4.0);
}

HermitianOperator isotropic_sigma(double q, bool primed) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 0) = m(3, 3) = (1.0 + q) / 4.0;
  m(1, 1) = m(2, 2) = (1.0 - q) / 4.0;
  m(0, 3) = m(3, 0) = q / 2.0;
  if (primed) {
    m(0, 2) = m(2, 0) = -q / 2.0;
    m(1, 3) = m(3, 1) = -q / 2.0;
  }
  return HermitianOperator::real({2, 2}, m);
}

HermitianOperator isotropic_witness(double q, bool primed) {
  if (!(q > -1.0 / 3.0 && q < 0.0)) throw std::invalid_argument("isotropic_witness: q must lie in (-1/3, 0)");
  return isotropic_sigma(q, primed).shifted(-(1.0 + q) / 4.0);
}

bool wxyz_condition(double x, double y, double z) {
  if (!(x >= 0.0 && x < 2.0)) return false;
  if (x + y + z < 2.0) return false;
  if (x <= 1.0 && y * z < (1.0 - x) * (1.0 - x)) return false;
  return true;
}

WxyzResult w_xyz(double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0) throw std::invalid_argument("w_xyz: parameters must be nonnegative");
  const double diag[9] = {x, y, z, z, x, y, y, z, x};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(9, 9);
  for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
  for (auto [i, j] : {std::pair{0, 4}, {0, 8}, {4, 8}}) m(i, j) = m(j, i) = -1.0;
  return {HermitianOperator::real({3, 3}, m), wxyz_condition(x, y, z)};
}

HermitianOperator choi_sigma() { return w_xyz(1.0, 1.0, 0.0).op.shifted(2.0); }

CVector choi_eigenvector(int k) {
  const double r3 = 1.0 / std::sqrt(3.0), r2 = 1.0 / std::sqrt(2.0);
  switch (k) {
    case 0: return ket(9, {{0, r3}, {4, r3}, {8, r3}});
    case 1: return ket(9, {{2, 1.0}});
    case 2: return ket(9, {{3, 1.0}});
    case 3: return ket(9, {{7, 1.0}});
    case 4: return ket(9, {{1, 1.0}});
    case 5: return ket(9, {{5, 1.0}});
    case 6: return ket(9, {{6, 1.0}});
    case 7: return ket(9, {{4, r2}, {0, -r2}});
    case 8: return ket(9, {{8, r2}, {0, -r2}});
    default: throw std::out_of_range("choi_eigenvector: index must be 0..8");
  }
}

HermitianOperator choi_q0() {
  return projector_on({3, 3}, choi_eigenvector(0)).scaled(0.5) + projector_on({3, 3}, choi_eigenvector(1));
}

HermitianOperator choi_q1() {
  return projector_on({3, 3}, choi_eigenvector(2)) + projector_on({3, 3}, choi_eigenvector(7));
}

HermitianOperator sigma1() {
  Eigen::MatrixXd m(4, 4);
  m << 1.0, 0, 0, 0,
       0, 0.5, 0.5, 0,
       0, 0.5, 0.5, 0,
       0, 0, 0, 1.0;
  return HermitianOperator::real({2, 2}, m);
}

HermitianOperator sigma2() {
  Eigen::MatrixXd m(4, 4);
  m << 1.1, 0, 0, 0,
       0, 0.6, 0.5, 0,
       0, 0.5, 0.6, 0,
       0, 0, 0, 1.1;
  return HermitianOperator::real({2, 2}, m);
}

WqExample wq_parts(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("wq_example: a and b must be positive");
  Eigen::MatrixXd m2 = Eigen::MatrixXd::Zero(4, 4);
  m2(0, 0) = m2(0, 3) = m2(3, 0) = m2(3, 3) = a;
  Eigen::MatrixXd m1 = Eigen::MatrixXd::Zero(4, 4);
  m1(1, 1) = m1(1, 2) = m1(2, 1) = m1(2, 2) = b;
  HermitianOperator q1 = HermitianOperator::real({2, 2}, m1);
  HermitianOperator q2 = HermitianOperator::real({2, 2}, m2);
  HermitianOperator w_opt = partial_transpose(q2, 1);
  HermitianOperator w = q1 + w_opt;
  const double r = 1.0 / std::sqrt(2.0);
  ProductVector zero(ket(2, {{0, r}, {1, -r}}), ket(2, {{0, r}, {1, r}}));
  return {std::move(q1), std::move(q2), std::move(w), std::move(w_opt), std::move(zero)};
}

HermitianOperator wq_example(double a, double b) { return wq_parts(a, b).w; }

C3Example c3_example() {
  const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  const std::vector<Index> dims{3, 3};
  HermitianOperator r1 = projector_on(dims, ket(9, {{1, r2}, {2, r2}}));
  HermitianOperator r2op = projector_on(dims, ket(9, {{0, r3}, {4, r3}, {8, r3}}));
  HermitianOperator q = projector_on(dims, ket(9, {{3, r2}, {5, r2}}));
  HermitianOperator p = projector_on(dims, ket(9, {{6, r2}, {7, r2}}));
  HermitianOperator w = r1 + partial_transpose(r2op, 1) + q;
  HermitianOperator w1 = w + p;
  HermitianOperator w2 = w - q;
  return {std::move(r1), std::move(r2op), std::move(p), std::move(q), std::move(w), std::move(w1), std::move(w2)};
}

HermitianOperator lift_example_witness() {
  Eigen::MatrixXd m(4, 4);
  m << 1.0 / 8, 0, 0, -1.0 / 4,
       0, 3.0 / 8, 0, 0,
       0, 0, 3.0 / 8, 0,
       -1.0 / 4, 0, 0, 1.0 / 8;
  return HermitianOperator::real({2, 2}, m);
}

HermitianOperator bell_pt_plus_q(const HermitianOperator& q) {
  const std::vector<Index> dims{2, 3};
  if (q.dims() != dims) throw DimensionError("Q must act on C^2 (x) C^3");
  if (min_eigenvalue(q) < -1e-10) throw std::invalid_argument("Q must be positive semidefinite");
  const Index support[4] = {0, 1, 3, 4};
  CMatrix outside = q.matrix();
  for (Index i : support) {
    for (Index k : support) outside(i, k) = 0.0;
  }
  if (outside.cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("Q must be supported on span{|00>, |01>, |10>, |11>}");
  }
  const double r = 1.0 / std::sqrt(2.0);
  HermitianOperator bell = projector_on(dims, ket(6, {{0, r}, {4, r}}));
  return partial_transpose(bell, 0) + q;
}

HermitianOperator bell_pt_default_q() {
  const double r = 1.0 / std::sqrt(2.0);
  return projector_on({2, 3}, ket(6, {{0, r}, {4, r}})).scaled(0.25);
}

HermitianOperator bell_pt_negative_projector() {
  const double r = 1.0 / std::sqrt(2.0);
  return projector_on({2, 3}, ket(6, {{1, r}, {3, -r}}));
}

std::vector<std::string> family_names() {
  return {"sigma1", "sigma2", "choi-sigma", "choi-witness", "w-xyz", "werner", "isotropic-witness",
          "isotropic-witness-primed", "wq", "wq-opt", "c3-w", "c3-w1", "c3-w2", "lift-example",
          "bell-projector", "bell-pt-q"};
}

HermitianOperator named_family(const std::string& name, const std::vector<double>& params) {
  if (name == "sigma1") return sigma1();
  if (name == "sigma2") return sigma2();
  if (name == "choi-sigma") return choi_sigma();
  if (name == "choi-witness") return w_xyz(1.0, 1.0, 0.0).op;
  if (name == "w-xyz") return w_xyz(param(params, 0, 1.0), param(params, 1, 1.0), param(params, 2, 0.0)).op;
  if (name == "werner") return werner_state(param(params, 0, 1.0));
  if (name == "isotropic-witness") return isotropic_witness(param(params, 0, -0.3), false);
  if (name == "isotropic-witness-primed") return isotropic_witness(param(params, 0, -0.3), true);
  if (name == "wq") return wq_example(param(params, 0, 1.0), param(params, 1, 1.0));
  if (name == "wq-opt") return wq_parts(param(params, 0, 1.0), param(params, 1, 1.0)).w_opt;
  if (name == "c3-w") return c3_example().w;
  if (name == "c3-w1") return c3_example().w1;
  if (name == "c3-w2") return c3_example().w2;
  if (name == "lift-example") return lift_example_witness();
  if (name == "bell-projector") return bell_projector();
  if (name == "bell-pt-q") return bell_pt_plus_q(bell_pt_default_q());
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace wf
