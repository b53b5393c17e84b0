#pragma once

#include <cstdint>
#include <random>

#include "eofkit/types.hpp"

namespace eofkit {

using Rng = std::mt19937_64;

/// Independent child seed for stream `index` of a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// m x n matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
CMatrix complex_gaussian(Rng& rng, int rows, int cols);

/// Haar-random unit vector in C^n.
CVector random_unit_vector(Rng& rng, int n);

}  // namespace eofkit
