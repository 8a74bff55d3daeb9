#include "wf/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wf {

Index product_of(const std::vector<Index>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

namespace {

void check_dims(const std::vector<Index>& dims, Index side) {
  if (dims.empty()) throw DimensionError("operator needs at least one factor dimension");
  for (Index d : dims) {
    if (d < 1) throw DimensionError("factor dimensions must be positive");
  }
  if (product_of(dims) != side) {
    std::ostringstream msg;
    msg << "matrix side " << side << " does not match product of dims " << product_of(dims);
    throw DimensionError(msg.str());
  }
}

// Mixed-radix decomposition of a flat index.
std::vector<Index> digits_of(Index flat, const std::vector<Index>& dims) {
  std::vector<Index> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = flat % dims[k];
    flat /= dims[k];
  }
  return out;
}

Index flat_of(const std::vector<Index>& digits, const std::vector<Index>& dims) {
  Index flat = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
  return flat;
}

}  // namespace

HermitianOperator::HermitianOperator(std::vector<Index> dims, CMatrix entries)
    : dims_(std::move(dims)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("operator matrix must be square");
  check_dims(dims_, entries_.rows());
  const double err = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (entries_.size() > 0 && err > kHermitianTol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |X - X^dagger| = " << err << ")";
    throw std::invalid_argument(msg.str());
  }
}

HermitianOperator HermitianOperator::identity(std::vector<Index> dims) {
  const Index n = product_of(dims);
  return {std::move(dims), CMatrix::Identity(n, n)};
}

HermitianOperator HermitianOperator::zero(std::vector<Index> dims) {
  const Index n = product_of(dims);
  return {std::move(dims), CMatrix::Zero(n, n)};
}

HermitianOperator HermitianOperator::projector(std::vector<Index> dims, const CVector& psi) {
  CMatrix p = psi * psi.adjoint();
  // Outer products are Hermitian up to rounding in the product itself.
  p = 0.5 * (p + p.adjoint()).eval();
  return {std::move(dims), std::move(p)};
}

HermitianOperator HermitianOperator::real(std::vector<Index> dims, const Eigen::MatrixXd& entries) {
  return {std::move(dims), entries.cast<Complex>()};
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (other.dims_ != dims_) throw DimensionError("operator dims differ in sum");
  return {dims_, entries_ + other.entries_};
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (other.dims_ != dims_) throw DimensionError("operator dims differ in difference");
  return {dims_, entries_ - other.entries_};
}

HermitianOperator HermitianOperator::operator-() const { return {dims_, -entries_}; }

HermitianOperator HermitianOperator::scaled(double factor) const { return {dims_, factor * entries_}; }

HermitianOperator HermitianOperator::shifted(double shift) const {
  CMatrix m = entries_;
  m.diagonal().array() += shift;
  return {dims_, std::move(m)};
}

double HermitianOperator::trace() const { return entries_.trace().real(); }

double HermitianOperator::trace_product(const HermitianOperator& other) const {
  if (other.dim() != dim()) throw DimensionError("trace product of operators with different sides");
  // tr(XY) = sum_ij X_ij Y_ji
  return (entries_.array() * other.entries_.transpose().array()).sum().real();
}

double HermitianOperator::max_abs_diff(const HermitianOperator& other) const {
  if (other.dims_ != dims_) throw DimensionError("operator dims differ");
  return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

HermitianOperator operator*(double factor, const HermitianOperator& op) { return op.scaled(factor); }

ProductVector::ProductVector(CVector u_in, CVector v_in) : u(std::move(u_in)), v(std::move(v_in)) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("product vector factors must be nonzero");
  u /= nu;
  v /= nv;
}

CVector ProductVector::kron() const {
  CVector out(u.size() * v.size());
  for (Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u(i) * v;
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& x, std::size_t factor_index) {
  const auto& dims = x.dims();
  if (factor_index >= dims.size()) {
    throw DimensionError("partial transpose factor index out of range");
  }
  const Index n = x.dim();
  // flat = hi * (d * lo_size) + digit * lo_size + lo
  Index lo_size = 1;
  for (std::size_t k = factor_index + 1; k < dims.size(); ++k) lo_size *= dims[k];
  const Index d = dims[factor_index];
  std::vector<Index> digit(n), rest(n);
  for (Index g = 0; g < n; ++g) {
    digit[g] = (g / lo_size) % d;
    rest[g] = g - digit[g] * lo_size;
  }
  CMatrix out(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      out(r, c) = x.matrix()(rest[r] + digit[c] * lo_size, rest[c] + digit[r] * lo_size);
    }
  }
  return {dims, std::move(out)};
}

HermitianOperator tensor(const HermitianOperator& x, const HermitianOperator& y) {
  const Index n = x.dim() * y.dim();
  if (n > kDenseCap) {
    std::ostringstream msg;
    msg << "tensor product side " << n << " exceeds dense cap " << kDenseCap
        << "; use StructuredOperator";
    throw DimensionError(msg.str());
  }
  CMatrix out(n, n);
  const Index m = y.dim();
  for (Index i = 0; i < x.dim(); ++i) {
    for (Index j = 0; j < x.dim(); ++j) out.block(i * m, j * m, m, m) = x.matrix()(i, j) * y.matrix();
  }
  std::vector<Index> dims = x.dims();
  dims.insert(dims.end(), y.dims().begin(), y.dims().end());
  return {std::move(dims), std::move(out)};
}

Spectrum eig_hermitian(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix());
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(x.dim() - 1);
}

double operator_norm(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(x.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::pair<Index, Index> bipartite_dims(const HermitianOperator& x) {
  const auto& dims = x.dims();
  if (dims.size() < 2) throw DimensionError("operator is not bipartite");
  return {dims[0], x.dim() / dims[0]};
}

double product_expectation(const HermitianOperator& x, const ProductVector& pv) {
  if (pv.u.size() * pv.v.size() != x.dim()) {
    throw DimensionError("product vector does not match operator dimension");
  }
  const CVector psi = pv.kron();
  const Complex value = psi.dot(x.matrix() * psi);
  const double scale = std::max(1.0, x.matrix().cwiseAbs().maxCoeff());
  if (std::abs(value.imag()) > 1e-10 * scale) {
    throw std::logic_error("product expectation of Hermitian operator has imaginary part");
  }
  return value.real();
}

CMatrix conditioned_matrix(const HermitianOperator& x, Side fixed, const CVector& w) {
  const auto [da, db] = bipartite_dims(x);
  const CMatrix& m = x.matrix();
  if (fixed == Side::A) {
    if (w.size() != da) throw DimensionError("conditioning vector does not match side A");
    CMatrix out = CMatrix::Zero(db, db);
    for (Index i = 0; i < da; ++i) {
      for (Index k = 0; k < da; ++k) {
        const Complex c = std::conj(w(i)) * w(k);
        if (c == Complex(0.0)) continue;
        out += c * m.block(i * db, k * db, db, db);
      }
    }
    return 0.5 * (out + out.adjoint());
  }
  if (w.size() != db) throw DimensionError("conditioning vector does not match side B");
  CMatrix out(da, da);
  for (Index j = 0; j < da; ++j) {
    for (Index l = 0; l < da; ++l) {
      out(j, l) = w.dot(m.block(j * db, l * db, db, db) * w);
    }
  }
  return 0.5 * (out + out.adjoint());
}

HermitianOperator swap_factors(const HermitianOperator& x) {
  const auto [da, db] = bipartite_dims(x);
  HermitianOperator flat({da, db}, x.matrix());
  return permute_factors(flat, {1, 0});
}

CVector permute_vector(const CVector& x, const std::vector<Index>& dims,
                       const std::vector<std::size_t>& order) {
  std::vector<Index> new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims.at(order[k]);
  CVector out(x.size());
  std::vector<Index> nd(order.size());
  for (Index g = 0; g < x.size(); ++g) {
    const auto od = digits_of(g, dims);
    for (std::size_t k = 0; k < order.size(); ++k) nd[k] = od[order[k]];
    out(flat_of(nd, new_dims)) = x(g);
  }
  return out;
}

HermitianOperator permute_factors(const HermitianOperator& x, const std::vector<std::size_t>& order) {
  const auto& dims = x.dims();
  if (order.size() != dims.size()) throw DimensionError("factor permutation has wrong length");
  std::vector<bool> seen(order.size(), false);
  for (auto k : order) {
    if (k >= order.size() || seen[k]) throw DimensionError("invalid factor permutation");
    seen[k] = true;
  }
  std::vector<Index> new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  const Index n = x.dim();
  std::vector<Index> map(n);
  std::vector<Index> nd(order.size());
  for (Index g = 0; g < n; ++g) {
    const auto od = digits_of(g, dims);
    for (std::size_t k = 0; k < order.size(); ++k) nd[k] = od[order[k]];
    map[g] = flat_of(nd, new_dims);
  }
  CMatrix out(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) out(map[r], map[c]) = x.matrix()(r, c);
  }
  return {std::move(new_dims), std::move(out)};
}

}  // namespace wf
