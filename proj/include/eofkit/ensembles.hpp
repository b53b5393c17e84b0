#pragma once

// Finite pure-state decompositions {(p_i, psi_i)} of a density matrix and the
// isometry parameterization that generates all of them at a fixed size.

#include <cstdint>
#include <vector>

#include "eofkit/qstate.hpp"

namespace eofkit {

inline constexpr double kWeightDropTol = 1e-12;
inline constexpr double kWeightSumTol = 1e-10;

class Ensemble {
 public:
  /// Drops members with weight <= 1e-12, then requires the rest to sum to 1
  /// within 1e-10 (renormalizing the residue) and to share one BipartiteDims.
  Ensemble(std::vector<double> weights, std::vector<PureState> members);

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<PureState>& members() const noexcept { return members_; }
  const BipartiteDims& dims() const noexcept { return members_.front().dims(); }
  size_t size() const noexcept { return members_.size(); }

 private:
  std::vector<double> weights_;
  std::vector<PureState> members_;
};

/// Complex m x r matrix with orthonormal columns.
class Isometry {
 public:
  /// Throws BadShape if rows < cols or U^dagger U deviates from I by more than 1e-10.
  explicit Isometry(CMatrix entries);

  const CMatrix& matrix() const noexcept { return entries_; }
  int rows() const noexcept { return static_cast<int>(entries_.rows()); }
  int cols() const noexcept { return static_cast<int>(entries_.cols()); }

 private:
  CMatrix entries_;
};

/// Eigenpairs of rho above the rank threshold, largest eigenvalue first.
struct SupportBasis {
  RVector eigenvalues;   // length r
  CMatrix eigenvectors;  // n x r, orthonormal columns
  int rank() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

SupportBasis support_basis(const DensityMatrix& rho);

/// sum_i p_i |psi_i><psi_i|, validated.
DensityMatrix barycenter(const Ensemble& e);

/// Eigen-decomposition of rho as an ensemble of orthonormal members.
Ensemble spectral_ensemble(const DensityMatrix& rho);

/// Ensemble with sqrt(p_i) psi_i = sum_j U_ij sqrt(lambda_j) e_j.
/// Throws RankMismatch unless u.cols() equals rank(rho).
Ensemble hjw_ensemble(const DensityMatrix& rho, const Isometry& u);
Ensemble hjw_ensemble(const SupportBasis& basis, BipartiteDims dims, const CMatrix& u);

/// sum_i p_i S(Tr_2 |psi_i><psi_i|), in nats.
double average_entanglement(const Ensemble& e);

/// Weights scaled by lambda and 1 - lambda, members concatenated.
Ensemble mix_ensembles(const Ensemble& e1, const Ensemble& e2, double lambda);

/// Members psi_a (x) psi_b with weights p_a q_b, reordered so the result is an
/// ensemble of permute_to_grouped(b(e1) (x) b(e2)).
Ensemble grouped_product(const Ensemble& e1, const Ensemble& e2);

/// Q factor of a thin QR decomposition with R's diagonal made positive.
CMatrix qr_orthonormalize(const CMatrix& a);

/// Column-orthonormal factor of an m x r complex Gaussian matrix. Columns are
/// rephased so that U_kk is real and nonnegative. Throws BadShape unless m >= r >= 1.
Isometry random_isometry(int m, int r, std::uint64_t seed);

/// Same barycenter with linearly independent member projectors (so at most
/// rank^2 members), reached by Caratheodory pivots that never increase
/// average_entanglement.
Ensemble reduce_support(const Ensemble& e);

/// Inverse of hjw_ensemble: the m x r isometry generating `e` from rho's
/// support basis, zero-padded below e.size() rows. Throws RankMismatch if
/// e.size() > m or if e does not decompose rho.
CMatrix isometry_from_ensemble(const SupportBasis& basis, const Ensemble& e, int m);

/// Largest |P_a - P_b| entry between two members' projectors; phase-blind equality.
double projector_distance(const PureState& a, const PureState& b);

}  // namespace eofkit
