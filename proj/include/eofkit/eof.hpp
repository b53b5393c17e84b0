#pragma once

// Entanglement of formation estimator. The search runs over m x r isometries U,
// each of which generates the cardinality-m decomposition hjw_ensemble(rho, U);
// every local minimization is therefore feasible by construction and the result
// is an upper bound on the true value.

#include <cstdint>
#include <optional>
#include <vector>

#include "eofkit/ensembles.hpp"

namespace eofkit {

struct EofConfig {
  /// Decomposition size m; unset means rank^2.
  std::optional<int> cardinality;
  int restarts = 32;
  int max_iterations = 2000;
  /// Stop once the per-iteration decrease stays below this.
  double objective_tolerance = 1e-8;
  std::uint64_t seed = 0;
};

struct EofResult {
  double value = 0.0;
  Ensemble witness;
  /// Random restarts first, then one entry per warm start.
  std::vector<double> per_restart_values;
  bool converged = false;
};

/// Upper limit on decomposition size: (2n)^2 + 1 affinely independent points, n = d1*d2.
int support_size_bound(BipartiteDims dims);

/// Resolves the default cardinality and checks the config against rho's rank.
/// Throws ConfigError.
int resolve_cardinality(const EofConfig& cfg, int rank, BipartiteDims dims);

/// Average entanglement of hjw(rho, U) as a smooth function of U together with
/// its Euclidean gradient (df = Re tr(G^dagger dU)). Defined for any m x r U,
/// not only isometries.
class DecompositionObjective {
 public:
  DecompositionObjective(const SupportBasis& basis, BipartiteDims dims);

  double value(const CMatrix& u) const;
  double value_and_gradient(const CMatrix& u, CMatrix& gradient) const;

  int rank() const noexcept { return static_cast<int>(weighted_basis_.cols()); }

 private:
  double evaluate(const CMatrix& u, CMatrix* gradient) const;

  CMatrix weighted_basis_;  // n x r, columns sqrt(lambda_j) e_j
  BipartiteDims dims_;
};

struct LocalSearchResult {
  CMatrix u;
  double value = 0.0;
  /// Objective after every accepted step, starting with the initial value.
  std::vector<double> history;
  bool converged = false;
};

/// Riemannian gradient descent on the complex Stiefel manifold with
/// Barzilai-Borwein step proposals, Armijo backtracking and QR retraction.
/// Accepted steps strictly decrease the objective.
LocalSearchResult minimize_over_isometries(const DecompositionObjective& objective, CMatrix u0,
                                           int max_iterations, double objective_tolerance);

/// Minimum over cfg.restarts seeded local searches, plus one local search from
/// each warm-start ensemble and from the spectral ensemble. Restarts run
/// concurrently (OpenMP); the result does not depend on scheduling.
/// Rank-1 inputs return the reduced entropy directly.
EofResult eof_estimate(const DensityMatrix& rho, const EofConfig& cfg = {},
                       const std::vector<Ensemble>& warm_starts = {});

/// Single-threaded reference for eof_estimate; bit-identical output.
EofResult eof_estimate_serial(const DensityMatrix& rho, const EofConfig& cfg = {},
                              const std::vector<Ensemble>& warm_starts = {});

/// Average entanglement of the eigen-decomposition.
double spectral_upper_bound(const DensityMatrix& rho);

/// S(Tr_2 rho) - E(rho).
double cnt_entropy(const DensityMatrix& rho, const EofConfig& cfg = {});
double cnt_entropy(const DensityMatrix& rho, const EofResult& estimate);

struct ConvexityTerms {
  double lambda = 0.0;
  EofResult first;
  EofResult second;
  EofResult mixture;
  /// lambda E1 + (1 - lambda) E2 - E(mixture)
  double gap() const { return lambda * first.value + (1.0 - lambda) * second.value - mixture.value; }
};

/// The mixture estimate is warm-started from the mixed witnesses, so gap() >= 0
/// up to optimizer round-off.
ConvexityTerms convexity_terms(const DensityMatrix& rho1, const DensityMatrix& rho2, double lambda,
                               const EofConfig& cfg = {});
double convexity_gap(const DensityMatrix& rho1, const DensityMatrix& rho2, double lambda,
                     const EofConfig& cfg = {});

struct SubadditivityTerms {
  EofResult single;
  EofResult doubled;  // estimate for permute_to_grouped(rho (x) rho)
  /// E(doubled) - 2 E(rho); nonpositive up to optimizer tolerance.
  double excess() const { return doubled.value - 2.0 * single.value; }
};

/// Doubled estimate is warm-started from grouped_product(witness, witness).
SubadditivityTerms subadditivity_terms(const DensityMatrix& rho, const EofConfig& cfg = {});

/// permute_to_grouped(rho (x) rho) across (H1 H1 | H2 H2).
DensityMatrix grouped_square(const DensityMatrix& rho);

}  // namespace eofkit
