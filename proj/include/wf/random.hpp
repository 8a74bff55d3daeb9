#pragma once

#include <cstdint>
#include <random>

#include "wf/hermitian.hpp"

namespace wf {

using Rng = std::mt19937_64;

/// Independent stream for restart `index` under `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

/// Complex Gaussian vector, normalized (Haar-uniform on the sphere).
CVector random_unit_vector(Index n, Rng& rng);

ProductVector random_product_vector(Index da, Index db, Rng& rng);

/// GUE-like Hermitian matrix with entries of order `scale`.
HermitianOperator random_hermitian(std::vector<Index> dims, Rng& rng, double scale = 1.0);

/// Ginibre-induced density matrix of the given rank (0 means full rank).
HermitianOperator random_density_matrix(std::vector<Index> dims, Rng& rng, Index rank = 0);

/// Convex mixture of `terms` random product projectors on C^da (x) C^db.
HermitianOperator random_separable_state(Index da, Index db, int terms, Rng& rng);

}  // namespace wf
