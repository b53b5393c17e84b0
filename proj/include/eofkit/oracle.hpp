#pragma once

// Ground truth for two-qubit entanglement of formation. Nothing here shares
// search code with the main estimator: wootters_eof is closed form, and
// brute_force_eof is a derivative-free search over 4x4 unitaries built from
// Givens rotations with its own closed-form two-qubit entropy.

#include <cstdint>

#include "eofkit/qstate.hpp"

namespace eofkit::oracle {

/// p |Psi-><Psi-| + (1 - p) I/4. Throws ParamOutOfRange outside [0, 1].
DensityMatrix werner_state(double p);

/// max(0, l1 - l2 - l3 - l4), l_i the decreasing square roots of the eigenvalues
/// of rho (sy (x) sy) rho^* (sy (x) sy).
double concurrence(const DensityMatrix& rho);

/// h((1 + sqrt(1 - C^2)) / 2) in nats. Throws DimensionMismatch unless dims are (2, 2).
double wootters_eof(const DensityMatrix& rho);

/// Binary entropy in nats.
double binary_entropy(double x);

/// Minimum average entanglement over `budget` Haar-random cardinality-4
/// decompositions, the best few polished by coordinate pattern search.
double brute_force_eof(const DensityMatrix& rho, int budget, std::uint64_t seed);

}  // namespace eofkit::oracle
