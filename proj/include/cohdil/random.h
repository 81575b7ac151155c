#pragma once

#include <cstddef>
#include <random>

#include "cohdil/hermitian.h"

namespace cohdil {

using Rng = std::mt19937_64;

/// Haar-random pure state (normalized complex Gaussian vector).
PureState random_pure_state(std::size_t d, Rng& rng);

/// Random real-amplitude pure state with nonnegative entries.
PureState random_real_state(std::size_t d, Rng& rng);

/// Hermitian matrix with i.i.d. Gaussian entries (GUE-like, unnormalized).
HermitianMatrix random_hermitian(std::size_t d, Rng& rng);

/// Random full-rank density matrix (Wishart-normalized).
HermitianMatrix random_density(std::size_t d, Rng& rng);

/// Random d x d unitary (QR of a complex Gaussian matrix with phase fix).
Matrix random_unitary(std::size_t d, Rng& rng);

/// Random complex matrix with i.i.d. Gaussian entries.
Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace cohdil
