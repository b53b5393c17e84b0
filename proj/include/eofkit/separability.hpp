#pragma once

#include <cstdint>
#include <vector>

#include "eofkit/qstate.hpp"

namespace eofkit {

struct SeparabilityVerdict {
  bool ppt = false;
  double min_pt_eigenvalue = 0.0;
  /// PPT is necessary and sufficient only for 2x2 and 2x3 (either order).
  bool conclusive = false;
};

inline constexpr double kPptTol = 1e-9;

SeparabilityVerdict ppt_check(const DensityMatrix& rho);

/// Convex combination of k Haar-random pure product states with flat-Dirichlet weights.
DensityMatrix random_separable(BipartiteDims dims, int k, std::uint64_t seed);

/// G G^dagger / tr(G G^dagger) for a complex Gaussian (d1 d2) x rank matrix G.
DensityMatrix random_density(BipartiteDims dims, int rank, std::uint64_t seed);

/// The five product vectors of the 3x3 "tiles" unextendible product basis.
std::vector<CVector> tiles_upb_vectors();

/// Projector onto the orthogonal complement of the tiles basis (rank 4).
CMatrix tiles_complement_projector();

/// P / tr(P) on 3x3; PPT yet entangled.
DensityMatrix tiles_upb_state();

struct OverlapSearchConfig {
  int restarts = 200;
  std::uint64_t seed = 0;
  int max_iterations = 1000;
};

struct OverlapSearchResult {
  double value = 0.0;
  CVector a;
  CVector b;
  /// Objective after every half-step of the best run (nondecreasing).
  std::vector<double> best_trace;
};

/// max <a(x)b|P|a(x)b> over unit a, b by alternating top-eigenvector updates
/// from seeded random starts. Throws NotAProjector unless P^2 = P within 1e-9.
OverlapSearchResult max_product_overlap_search(const CMatrix& projector, BipartiteDims dims,
                                               const OverlapSearchConfig& cfg = {});
double max_product_overlap(const CMatrix& projector, BipartiteDims dims, const OverlapSearchConfig& cfg = {});

}  // namespace eofkit
