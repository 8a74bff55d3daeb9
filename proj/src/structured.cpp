#include "wf/structured.hpp"

#include <algorithm>
#include <sstream>

#include "wf/random.hpp"

namespace wf {

Atom Atom::identity(Index d) {
  if (d < 1) throw DimensionError("atom dimension must be positive");
  return {Kind::Identity, d, nullptr};
}

Atom Atom::dense(const HermitianOperator& m) { return dense(m.matrix()); }

Atom Atom::dense(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw DimensionError("dense atom must be square");
  return {Kind::Dense, m.rows(), std::make_shared<const CMatrix>(m)};
}

Atom Atom::swap(Index d) {
  if (d < 1) throw DimensionError("atom dimension must be positive");
  return {Kind::Swap, d, nullptr};
}

Atom Atom::classical_projector(Index d) {
  if (d < 1) throw DimensionError("atom dimension must be positive");
  return {Kind::ClassicalProjector, d, nullptr};
}

void Atom::apply(const Complex* x, Complex* y, Index left, Index right) const {
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Index n = dim_;
  switch (kind_) {
    case Kind::Identity:
      std::copy(x, x + left * n * right, y);
      return;
    case Kind::Dense: {
      const Index block = n * right;
      for (Index l = 0; l < left; ++l) {
        Eigen::Map<const RowMajor> in(x + l * block, n, right);
        Eigen::Map<RowMajor> out(y + l * block, n, right);
        out.noalias() = (*matrix_) * in;
      }
      return;
    }
    case Kind::Swap: {
      const Index block = n * n * right;
      for (Index l = 0; l < left; ++l) {
        const Complex* xb = x + l * block;
        Complex* yb = y + l * block;
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            std::copy(xb + (j * n + i) * right, xb + (j * n + i + 1) * right, yb + (i * n + j) * right);
          }
        }
      }
      return;
    }
    case Kind::ClassicalProjector: {
      const Index block = n * n * right;
      std::fill(y, y + left * block, Complex(0.0));
      for (Index l = 0; l < left; ++l) {
        for (Index i = 0; i < n; ++i) {
          const Index off = l * block + (i * n + i) * right;
          std::copy(x + off, x + off + right, y + off);
        }
      }
      return;
    }
  }
}

StructuredOperator::StructuredOperator(std::vector<Index> space_dims)
    : space_dims_(std::move(space_dims)), dim_(product_of(space_dims_)) {
  if (space_dims_.empty()) throw DimensionError("structured operator needs slots");
  for (Index d : space_dims_) {
    if (d < 1) throw DimensionError("slot dimensions must be positive");
  }
}

void StructuredOperator::validate_layer(const Layer& layer) const {
  std::size_t slot = 0;
  for (const Atom& atom : layer) {
    for (int s = 0; s < atom.span(); ++s) {
      if (slot >= space_dims_.size() || space_dims_[slot] != atom.slot_dim()) {
        std::ostringstream msg;
        msg << "atom does not match slot " << slot << " of the structured space";
        throw DimensionError(msg.str());
      }
      ++slot;
    }
  }
  if (slot != space_dims_.size()) throw DimensionError("layer does not cover every slot");
}

StructuredOperator& StructuredOperator::add_term(double coefficient, Layer layer) {
  std::vector<Layer> layers;
  layers.push_back(std::move(layer));
  return add_term(coefficient, std::move(layers));
}

StructuredOperator& StructuredOperator::add_term(double coefficient, std::vector<Layer> layers) {
  if (layers.empty()) throw DimensionError("term needs at least one layer");
  for (const auto& layer : layers) validate_layer(layer);
  terms_.push_back({coefficient, std::move(layers)});
  return *this;
}

void StructuredOperator::accumulate_term(const Term& term, const CVector& x, CVector& out, CVector& buf_a,
                                         CVector& buf_b) const {
  const CVector* cur = &x;
  CVector* next = &buf_a;
  CVector* spare = &buf_b;
  for (auto layer = term.layers.rbegin(); layer != term.layers.rend(); ++layer) {
    Index left = 1;
    for (const Atom& atom : *layer) {
      const Index width = atom.span() == 2 ? atom.slot_dim() * atom.slot_dim() : atom.slot_dim();
      if (atom.kind() != Atom::Kind::Identity) {
        const Index right = dim_ / (left * width);
        atom.apply(cur->data(), next->data(), left, right);
        cur = next;
        std::swap(next, spare);
      }
      left *= width;
    }
  }
  out.noalias() += term.coefficient * (*cur);
}

CVector StructuredOperator::apply(const CVector& x) const {
  if (x.size() != dim_) throw DimensionError("structured matvec dimension mismatch");
  CVector out = CVector::Zero(dim_);
  CVector buf_a(dim_), buf_b(dim_);
  for (const Term& term : terms_) accumulate_term(term, x, out, buf_a, buf_b);
  return out;
}

double StructuredOperator::expectation(const CVector& x) const { return x.dot(apply(x)).real(); }

HermitianOperator StructuredOperator::materialize() const {
  if (dim_ > kDenseCap) {
    std::ostringstream msg;
    msg << "cannot materialize structured operator of dimension " << dim_ << " (cap " << kDenseCap << ")";
    throw DimensionError(msg.str());
  }
  CMatrix m(dim_, dim_);
  CVector e = CVector::Zero(dim_);
  for (Index c = 0; c < dim_; ++c) {
    e(c) = 1.0;
    m.col(c) = apply(e);
    e(c) = 0.0;
  }
  // Terms are individually exact; the sum can carry rounding asymmetry.
  m = 0.5 * (m + m.adjoint()).eval();
  return {space_dims_, std::move(m)};
}

StructuredOperator StructuredOperator::operator+(const StructuredOperator& other) const {
  if (other.space_dims_ != space_dims_) throw DimensionError("structured operators live on different spaces");
  StructuredOperator out = *this;
  out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
  return out;
}

StructuredOperator StructuredOperator::operator-(const StructuredOperator& other) const {
  return *this + other.scaled(-1.0);
}

StructuredOperator StructuredOperator::scaled(double factor) const {
  StructuredOperator out = *this;
  for (Term& t : out.terms_) t.coefficient *= factor;
  return out;
}

StructuredOperator compose(const StructuredOperator& a, const StructuredOperator& b) {
  if (a.space_dims() != b.space_dims()) throw DimensionError("cannot compose operators on different spaces");
  StructuredOperator out(a.space_dims());
  for (const Term& ta : a.terms()) {
    for (const Term& tb : b.terms()) {
      std::vector<Layer> layers = ta.layers;
      layers.insert(layers.end(), tb.layers.begin(), tb.layers.end());
      // Drop all-identity layers unless nothing else remains.
      std::vector<Layer> kept;
      for (auto& layer : layers) {
        const bool trivial = std::all_of(layer.begin(), layer.end(),
                                         [](const Atom& at) { return at.kind() == Atom::Kind::Identity; });
        if (!trivial) kept.push_back(std::move(layer));
      }
      if (kept.empty()) kept.push_back(identity_layer(a.space_dims()));
      out.add_term(ta.coefficient * tb.coefficient, std::move(kept));
    }
  }
  return out;
}

Layer identity_layer(const std::vector<Index>& slot_dims) {
  Layer layer;
  for (Index d : slot_dims) layer.push_back(Atom::identity(d));
  return layer;
}

StructuredOperator pair_sym_projector(Index d1, Index d2, double sign) {
  StructuredOperator p({d1, d1, d2, d2});
  p.add_term(0.5, identity_layer(p.space_dims()));
  p.add_term(0.5 * sign, Layer{Atom::swap(d1), Atom::swap(d2)});
  return p;
}

StructuredOperator build_structural(StructuralKind kind, Index d) {
  if (d < 1) throw DimensionError("structural operator dimension must be positive");
  switch (kind) {
    case StructuralKind::Identity: {
      StructuredOperator s({d, d});
      s.add_term(1.0, identity_layer(s.space_dims()));
      return s;
    }
    case StructuralKind::Swap: {
      StructuredOperator s({d, d});
      s.add_term(1.0, Layer{Atom::swap(d)});
      return s;
    }
    case StructuralKind::ClassicalProjector: {
      StructuredOperator s({d, d});
      s.add_term(1.0, Layer{Atom::classical_projector(d)});
      return s;
    }
    case StructuralKind::SymProjector:
      return pair_sym_projector(d, d, 1.0);
    case StructuralKind::AsymProjector:
      return pair_sym_projector(d, d, -1.0);
  }
  throw std::logic_error("unknown structural kind");
}

double hermiticity_defect(const StructuredOperator& s, int probes, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  double worst = 0.0;
  for (int k = 0; k < probes; ++k) {
    const CVector x = random_unit_vector(s.dim(), rng);
    const CVector y = random_unit_vector(s.dim(), rng);
    const CVector sx = s.apply(x);
    const CVector sy = s.apply(y);
    const double scale = std::max({sx.norm(), sy.norm(), 1e-300});
    worst = std::max(worst, std::abs(x.dot(sy) - sx.dot(y)) / scale);
  }
  return worst;
}

}  // namespace wf
