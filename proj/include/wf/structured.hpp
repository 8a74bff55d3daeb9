#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wf/hermitian.hpp"

namespace wf {

/// One tensor factor of a structured term. Swap and ClassicalProjector act on
/// two adjacent slots of equal dimension; the others act on one slot.
class Atom {
 public:
  enum class Kind { Identity, Dense, Swap, ClassicalProjector };

  static Atom identity(Index d);
  static Atom dense(const HermitianOperator& m);
  static Atom dense(const CMatrix& m);
  static Atom swap(Index d);
  static Atom classical_projector(Index d);

  Kind kind() const { return kind_; }
  /// Dimension of each slot the atom covers.
  Index slot_dim() const { return dim_; }
  int span() const { return kind_ == Kind::Swap || kind_ == Kind::ClassicalProjector ? 2 : 1; }
  const CMatrix& matrix() const { return *matrix_; }

  /// Applies to x viewed as (left, slot_dim^span, right), writing into y.
  void apply(const Complex* x, Complex* y, Index left, Index right) const;

 private:
  Atom(Kind kind, Index dim, std::shared_ptr<const CMatrix> m) : kind_(kind), dim_(dim), matrix_(std::move(m)) {}
  Kind kind_;
  Index dim_;
  std::shared_ptr<const CMatrix> matrix_;
};

/// Kronecker product of atoms laid out left to right over the slots.
using Layer = std::vector<Atom>;

/// coefficient * layers[0] * layers[1] * ... (rightmost layer acts first).
struct Term {
  double coefficient = 1.0;
  std::vector<Layer> layers;
};

/// Real-weighted sum of tensor-structured terms, applied without dense
/// materialization. Cost of a matvec is linear in the total dimension times
/// the sum of dense-factor sizes.
class StructuredOperator {
 public:
  explicit StructuredOperator(std::vector<Index> space_dims);

  const std::vector<Index>& space_dims() const { return space_dims_; }
  Index dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  StructuredOperator& add_term(double coefficient, Layer layer);
  StructuredOperator& add_term(double coefficient, std::vector<Layer> layers);

  CVector apply(const CVector& x) const;
  double expectation(const CVector& x) const;

  /// Dense matrix via basis matvecs; throws DimensionError past kDenseCap.
  HermitianOperator materialize() const;

  StructuredOperator operator+(const StructuredOperator& other) const;
  StructuredOperator operator-(const StructuredOperator& other) const;
  StructuredOperator scaled(double factor) const;

 private:
  void validate_layer(const Layer& layer) const;
  void accumulate_term(const Term& term, const CVector& x, CVector& out, CVector& buf_a, CVector& buf_b) const;

  std::vector<Index> space_dims_;
  Index dim_;
  std::vector<Term> terms_;
};

/// a * b as a structured operator (term lists multiplied out).
StructuredOperator compose(const StructuredOperator& a, const StructuredOperator& b);

inline CVector structured_matvec(const StructuredOperator& op, const CVector& x) { return op.apply(x); }

/// Identity layer over the given slots.
Layer identity_layer(const std::vector<Index>& slot_dims);

enum class StructuralKind { Identity, Swap, ClassicalProjector, SymProjector, AsymProjector };

/// Swap, ClassicalProjector and Identity act on C^d (x) C^d; the symmetric
/// and antisymmetric projectors 1/2 (I (x) I +- V (x) V) act on
/// (C^d (x) C^d) (x) (C^d (x) C^d), with V swapping within each pair.
StructuredOperator build_structural(StructuralKind kind, Index d);

/// Symmetric / antisymmetric projector for a four-slot space {d1, d1, d2, d2}.
StructuredOperator pair_sym_projector(Index d1, Index d2, double sign);

/// Largest |<x|S y> - <S x|y>| over random probes, relative to ||S x||.
double hermiticity_defect(const StructuredOperator& s, int probes, std::uint64_t seed);

}  // namespace wf
