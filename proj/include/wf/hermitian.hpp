#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wf {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest side of a dense operator; bigger spaces go through StructuredOperator.
inline constexpr Index kDenseCap = 4096;

/// Entrywise tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense Hermitian matrix over a tensor-product space.
///
/// The basis is lexicographic in the factor indices, so for dims {dA, dB}
/// the ket |i>|j> sits at row i*dB + j. Construction rejects anything that
/// is not Hermitian to within kHermitianTol; it never symmetrizes.
class HermitianOperator {
 public:
  HermitianOperator(std::vector<Index> dims, CMatrix entries);

  static HermitianOperator identity(std::vector<Index> dims);
  static HermitianOperator zero(std::vector<Index> dims);
  /// |psi><psi| for an arbitrary (not necessarily normalized) vector.
  static HermitianOperator projector(std::vector<Index> dims, const CVector& psi);
  /// Builds from a real symmetric matrix.
  static HermitianOperator real(std::vector<Index> dims, const Eigen::MatrixXd& entries);

  const std::vector<Index>& dims() const { return dims_; }
  Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator-() const;
  HermitianOperator scaled(double factor) const;
  /// this + shift * I
  HermitianOperator shifted(double shift) const;

  double trace() const;
  /// tr(this * other), real for Hermitian pairs.
  double trace_product(const HermitianOperator& other) const;
  /// Largest |entry| difference to another operator with equal dims.
  double max_abs_diff(const HermitianOperator& other) const;

 private:
  std::vector<Index> dims_;
  CMatrix entries_;
};

HermitianOperator operator*(double factor, const HermitianOperator& op);

Index product_of(const std::vector<Index>& dims);

/// |u> (x) |v> with both factors of unit norm.
struct ProductVector {
  CVector u;
  CVector v;

  ProductVector() = default;
  /// Normalizes both factors; throws on zero vectors.
  ProductVector(CVector u_in, CVector v_in);

  CVector kron() const;
};

struct Spectrum {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors;  // column k pairs with eigenvalues[k]

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

enum class Side { A, B };

/// Transposes the given tensor factor in the lexicographic basis.
HermitianOperator partial_transpose(const HermitianOperator& x, std::size_t factor_index = 1);

/// Kronecker product with concatenated dims. Throws DimensionError past kDenseCap.
HermitianOperator tensor(const HermitianOperator& x, const HermitianOperator& y);

Spectrum eig_hermitian(const HermitianOperator& x);

double min_eigenvalue(const HermitianOperator& x);
double max_eigenvalue(const HermitianOperator& x);
/// Operator norm, max |lambda|.
double operator_norm(const HermitianOperator& x);

/// Collapses dims to a bipartition {dims[0], rest}; identity on two-factor operators.
std::pair<Index, Index> bipartite_dims(const HermitianOperator& x);

/// <u (x) v| X |u (x) v>.
double product_expectation(const HermitianOperator& x, const ProductVector& pv);

/// M[j,l] = <w e_j|X|w e_l> for side A fixed, <e_j w|X|e_l w> for side B fixed.
CMatrix conditioned_matrix(const HermitianOperator& x, Side fixed, const CVector& w);

/// Reorders a bipartite operator's factors, X on A(x)B -> X on B(x)A.
HermitianOperator swap_factors(const HermitianOperator& x);

/// Reorders tensor slots: new slot k is old slot order[k].
HermitianOperator permute_factors(const HermitianOperator& x, const std::vector<std::size_t>& order);

CVector permute_vector(const CVector& x, const std::vector<Index>& dims,
                       const std::vector<std::size_t>& order);

}  // namespace wf
