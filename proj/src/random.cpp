#include "wf/random.hpp"

namespace wf {

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace {

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

CVector random_unit_vector(Index n, Rng& rng) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = gaussian_complex(rng);
  return v / v.norm();
}

ProductVector random_product_vector(Index da, Index db, Rng& rng) {
  CVector u = random_unit_vector(da, rng);
  CVector v = random_unit_vector(db, rng);
  return {std::move(u), std::move(v)};
}

HermitianOperator random_hermitian(std::vector<Index> dims, Rng& rng, double scale) {
  const Index n = product_of(dims);
  CMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = gaussian_complex(rng);
  }
  CMatrix h = 0.5 * scale * (g + g.adjoint());
  return {std::move(dims), std::move(h)};
}

HermitianOperator random_density_matrix(std::vector<Index> dims, Rng& rng, Index rank) {
  const Index n = product_of(dims);
  const Index k = rank <= 0 ? n : rank;
  CMatrix g(n, k);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < k; ++j) g(i, j) = gaussian_complex(rng);
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {std::move(dims), std::move(rho)};
}

HermitianOperator random_separable_state(Index da, Index db, int terms, Rng& rng) {
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  CMatrix acc = CMatrix::Zero(da * db, da * db);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    const double w = weight(rng);
    const CVector psi = random_product_vector(da, db, rng).kron();
    acc += w * psi * psi.adjoint();
    total += w;
  }
  acc /= total;
  acc = 0.5 * (acc + acc.adjoint()).eval();
  return {{da, db}, std::move(acc)};
}

}  // namespace wf
