#include "wf/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wf/lanczos.hpp"
#include "wf/random.hpp"

namespace wf {

void OptimizerConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (!(tol_converge > 0.0) || !(tol_zero > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
}

namespace {

BilinearForm::HalfStep lowest_eigenpair(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Dense

DenseBilinearForm::DenseBilinearForm(HermitianOperator x) : x_(std::move(x)) {
  std::tie(da_, db_) = bipartite_dims(x_);
}

double DenseBilinearForm::expectation(const ProductVector& pv) const {
  return product_expectation(x_, pv);
}

BilinearForm::HalfStep DenseBilinearForm::minimize_free_side(Side fixed, const CVector& w,
                                                             const CVector& /*current*/) const {
  return lowest_eigenpair(conditioned_matrix(x_, fixed, w));
}

// ---------------------------------------------------------------------------
// Structured

StructuredBilinearForm::StructuredBilinearForm(std::shared_ptr<const StructuredOperator> op,
                                               std::vector<Side> slot_sides)
    : op_(std::move(op)) {
  const auto& dims = op_->space_dims();
  if (slot_sides.size() != dims.size()) throw DimensionError("slot side assignment has wrong length");
  std::vector<Index> dims_a, dims_b;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    (slot_sides[k] == Side::A ? dims_a : dims_b).push_back(dims[k]);
  }
  if (dims_a.empty() || dims_b.empty()) throw DimensionError("both sides need at least one slot");
  da_ = product_of(dims_a);
  db_ = product_of(dims_b);
  const Index n = op_->dim();
  index_a_.resize(n);
  index_b_.resize(n);
  for (Index g = 0; g < n; ++g) {
    Index rest = g;
    Index ia = 0, ib = 0, wa = 1, wb = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
      const Index digit = rest % dims[k];
      rest /= dims[k];
      if (slot_sides[k] == Side::A) {
        ia += digit * wa;
        wa *= dims[k];
      } else {
        ib += digit * wb;
        wb *= dims[k];
      }
    }
    index_a_[g] = ia;
    index_b_[g] = ib;
  }
}

CVector StructuredBilinearForm::embed(const CVector& u, const CVector& v) const {
  if (u.size() != da_ || v.size() != db_) throw DimensionError("product vector does not match bipartition");
  CVector x(op_->dim());
  for (Index g = 0; g < x.size(); ++g) x(g) = u(index_a_[g]) * v(index_b_[g]);
  return x;
}

CVector StructuredBilinearForm::contract(Side fixed, const CVector& w, const CVector& global) const {
  if (fixed == Side::A) {
    CVector r = CVector::Zero(db_);
    for (Index g = 0; g < global.size(); ++g) r(index_b_[g]) += std::conj(w(index_a_[g])) * global(g);
    return r;
  }
  CVector r = CVector::Zero(da_);
  for (Index g = 0; g < global.size(); ++g) r(index_a_[g]) += std::conj(w(index_b_[g])) * global(g);
  return r;
}

double StructuredBilinearForm::expectation(const ProductVector& pv) const {
  return op_->expectation(embed(pv.u, pv.v));
}

BilinearForm::HalfStep StructuredBilinearForm::minimize_free_side(Side fixed, const CVector& w,
                                                                  const CVector& current) const {
  const Index free_dim = fixed == Side::A ? db_ : da_;
  auto lift = [&](const CVector& y) {
    return fixed == Side::A ? embed(w, y) : embed(y, w);
  };
  MatVec conditioned = [&](const CVector& y) -> CVector { return contract(fixed, w, op_->apply(lift(y))); };

  if (free_dim <= kExplicitLimit) {
    CMatrix m(free_dim, free_dim);
    CVector e = CVector::Zero(free_dim);
    for (Index l = 0; l < free_dim; ++l) {
      e(l) = 1.0;
      m.col(l) = conditioned(e);
      e(l) = 0.0;
    }
    return lowest_eigenpair(0.5 * (m + m.adjoint()));
  }
  LanczosOptions opts;
  opts.krylov_dim = 40;
  opts.max_cycles = 4;
  opts.tol = 1e-9;
  opts.scale = 1e-3;
  RitzPair r = lanczos_smallest(conditioned, current, opts);
  const double value = r.vector.dot(conditioned(r.vector)).real();
  const double incumbent = current.dot(conditioned(current)).real();
  if (value > incumbent) return {incumbent, current};
  return {value, r.vector};
}

// ---------------------------------------------------------------------------
// See-saw driver

namespace {

struct RestartOutcome {
  double value;
  ProductVector pv;
  bool converged;
  bool monotone;
  int sweeps;
};

RestartOutcome run_restart(const BilinearForm& form, const OptimizerConfig& cfg, int index) {
  Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(index));
  CVector u = random_unit_vector(form.dim_a(), rng);
  CVector v = random_unit_vector(form.dim_b(), rng);
  double value = form.expectation(ProductVector(u, v));
  double last_sweep_value = value;
  bool monotone = true;
  bool converged = false;
  int sweep = 0;
  auto check = [&](double next) {
    const double slack = 1e-12 * std::max(1.0, std::abs(value));
    if (next > value + slack) monotone = false;
    value = next;
  };
  for (; sweep < cfg.max_sweeps; ++sweep) {
    auto hv = form.minimize_free_side(Side::A, u, v);
    v = hv.vector / hv.vector.norm();
    check(hv.value);
    auto hu = form.minimize_free_side(Side::B, v, u);
    u = hu.vector / hu.vector.norm();
    check(hu.value);
    const double change = std::abs(last_sweep_value - value);
    last_sweep_value = value;
    if (sweep > 0 && change <= cfg.tol_converge * std::max(1.0, std::abs(value))) {
      converged = true;
      ++sweep;
      break;
    }
  }
  ProductVector pv(u, v);
  return {form.expectation(pv), pv, converged, monotone, sweep};
}

}  // namespace

MinProdResult min_product_expectation(const BilinearForm& form, const OptimizerConfig& cfg) {
  cfg.validate();
  MinProdResult best;
  bool first = true;
  bool monotone = true;
  for (int r = 0; r < cfg.restarts; ++r) {
    RestartOutcome out = run_restart(form, cfg, r);
    monotone = monotone && out.monotone;
    if (first || out.value < best.value) {
      best.value = out.value;
      best.argmin = out.pv;
      best.converged = out.converged;
      best.sweeps = out.sweeps;
      first = false;
    }
  }
  best.restarts_used = cfg.restarts;
  best.monotone = monotone;
  return best;
}

MinProdResult min_product_expectation(const HermitianOperator& x, const OptimizerConfig& cfg) {
  return min_product_expectation(DenseBilinearForm(x), cfg);
}

MinProdResult max_product_expectation(const HermitianOperator& x, const OptimizerConfig& cfg) {
  MinProdResult r = min_product_expectation(DenseBilinearForm(-x), cfg);
  r.value = -r.value;
  return r;
}

// ---------------------------------------------------------------------------
// Oracle and zero sets

double grid_oracle_minprod(const HermitianOperator& x, int resolution) {
  const Index da = x.dims().size() == 2 ? x.dims()[0] : 0;
  const Index db = x.dims().size() == 2 ? x.dims()[1] : 0;
  if (da != 2 || (db != 2 && db != 3)) throw DimensionError("grid oracle supports 2x2 and 2x3 only");
  if (resolution < 64) throw std::invalid_argument("grid oracle resolution must be at least 64");
  const CMatrix& m = x.matrix();
  const CMatrix b00 = m.block(0, 0, db, db);
  const CMatrix b01 = m.block(0, db, db, db);
  const CMatrix b11 = m.block(db, db, db, db);
  double best = std::numeric_limits<double>::infinity();
  for (int ti = 0; ti < resolution; ++ti) {
    const double theta = 0.5 * std::numbers::pi * ti / (resolution - 1);
    const double c = std::cos(theta), s = std::sin(theta);
    for (int pj = 0; pj < resolution; ++pj) {
      const double phi = 2.0 * std::numbers::pi * pj / resolution;
      const Complex u1 = std::polar(s, phi);
      // <u|_A X |u>_A with u = (c, u1)
      CMatrix k = c * c * b00 + std::norm(u1) * b11 + c * u1 * b01 + c * std::conj(u1) * b01.adjoint();
      double low;
      if (db == 2) {
        const double a = k(0, 0).real(), d = k(1, 1).real();
        low = 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(k(0, 1)));
      } else {
        k = 0.5 * (k + k.adjoint()).eval();
        low = Eigen::SelfAdjointEigenSolver<CMatrix>(k, Eigen::EigenvaluesOnly).eigenvalues()(0);
      }
      best = std::min(best, low);
    }
  }
  return best;
}

std::vector<ProductVector> collect_zero_products(const HermitianOperator& w, const OptimizerConfig& cfg) {
  cfg.validate();
  DenseBilinearForm form(w);
  std::vector<ProductVector> zeros;
  std::vector<CVector> kets;
  for (int r = 0; r < cfg.restarts; ++r) {
    RestartOutcome out = run_restart(form, cfg, r);
    if (out.value < -cfg.tol_zero) {
      std::ostringstream msg;
      msg << "operator is negative on a product vector (" << out.value << "); zero set undefined";
      throw std::invalid_argument(msg.str());
    }
    if (std::abs(out.value) > cfg.tol_zero) continue;
    const CVector ket = out.pv.kron();
    const bool duplicate = std::any_of(kets.begin(), kets.end(), [&](const CVector& other) {
      return std::abs(other.dot(ket)) >= 1.0 - 1e-6;
    });
    if (duplicate) continue;
    kets.push_back(ket);
    zeros.push_back(out.pv);
  }
  return zeros;
}

Index spanning_rank(const std::vector<ProductVector>& zeros, Index da, Index db) {
  if (zeros.empty()) return 0;
  CMatrix rows(static_cast<Index>(zeros.size()), da * db);
  for (std::size_t k = 0; k < zeros.size(); ++k) {
    if (zeros[k].u.size() != da || zeros[k].v.size() != db) throw DimensionError("zero product dims mismatch");
    rows.row(static_cast<Index>(k)) = zeros[k].kron().transpose();
  }
  Eigen::JacobiSVD<CMatrix> svd(rows);
  const RVector& sv = svd.singularValues();
  const double cut = 1e-8 * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) rank += sv(i) > cut ? 1 : 0;
  return rank;
}

}  // namespace wf
