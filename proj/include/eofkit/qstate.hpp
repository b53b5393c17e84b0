#pragma once

// Bipartite states on C^d1 (x) C^d2: validation, tensor algebra, reductions
// and spectral quantities. All operations are pure functions on values.

#include <array>
#include <vector>

#include "eofkit/types.hpp"

namespace eofkit {

/// Eigen-decomposition of the Hermitian part (M + M^dagger)/2, eigenvalues ascending.
struct HermitianSpectrum {
  RVector values;
  CMatrix vectors;
};

HermitianSpectrum hermitian_eigen(const CMatrix& m);
RVector hermitian_eigenvalues(const CMatrix& m);

/// -sum x ln x over a spectrum, 0 ln 0 = 0. Throws NotAState below -kClampTol.
double entropy_of_spectrum(const RVector& eigenvalues);

/// Trace-one positive semidefinite matrix with an attached bipartition.
class DensityMatrix {
 public:
  const BipartiteDims& dims() const noexcept { return dims_; }
  const CMatrix& matrix() const noexcept { return entries_; }
  int size() const noexcept { return dims_.total(); }

 private:
  DensityMatrix(CMatrix entries, BipartiteDims dims)
      : entries_(std::move(entries)), dims_(dims) {}

  CMatrix entries_;
  BipartiteDims dims_;

  friend DensityMatrix validate_density(const CMatrix&, BipartiteDims);
};

/// Unit vector on C^d1 (x) C^d2.
class PureState {
 public:
  /// Throws NotNormalized if | |psi| - 1 | > 1e-12, DimensionMismatch on length.
  PureState(CVector amplitudes, BipartiteDims dims);

  /// Rescales a nonzero vector to unit norm.
  static PureState normalized(const CVector& v, BipartiteDims dims);

  const BipartiteDims& dims() const noexcept { return dims_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }

  /// |psi><psi|
  CMatrix projector() const;
  DensityMatrix density() const;

 private:
  CVector amplitudes_;
  BipartiteDims dims_;
};

/// Symmetrizes, then checks Hermiticity, trace and positivity (in that order).
DensityMatrix validate_density(const CMatrix& entries, BipartiteDims dims);

/// Named states.
PureState singlet();                  // (|01> - |10>)/sqrt 2
PureState max_entangled(int d);       // sum_i |ii>/sqrt d
PureState product_state(const CVector& a, const CVector& b);
DensityMatrix maximally_mixed(BipartiteDims dims);

/// Kronecker product; result dims (a.total, b.total), i.e. factors ordered (a1, a2, b1, b2).
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

enum class Subsystem { first, second };

/// Reduced state. keep=first traces out the second factor and returns dims (d1, 1);
/// keep=second returns dims (1, d2).
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Reduced operator of an arbitrary square matrix on d1*d2, keeping the first factor.
CMatrix reduce_to_first(const CMatrix& m, BipartiteDims dims);

/// Transpose on the second factor: ((i1,i2),(j1,j2)) -> ((i1,j2),(j1,i2)).
CMatrix partial_transpose(const CMatrix& m, BipartiteDims dims);
CMatrix partial_transpose(const DensityMatrix& rho);

/// Dimensions of a four-factor space H_a1 (x) H_a2 (x) H_b1 (x) H_b2.
using FourFactorDims = std::array<int, 4>;

/// Reorders tensor factors (a1, a2, b1, b2) -> (a1, b1, a2, b2), so a state on
/// (a1 a2)(b1 b2) becomes bipartite across (a1 b1 | a2 b2).
DensityMatrix permute_to_grouped(const DensityMatrix& rho, FourFactorDims factors);
CMatrix permute_to_grouped(const CMatrix& m, FourFactorDims factors);
CVector permute_to_grouped(const CVector& v, FourFactorDims factors);

/// Singular values of the d1 x d2 amplitude matrix, nonincreasing.
RVector schmidt_coefficients(const PureState& psi);

/// (1/2) * sum of singular values of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Entropy in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of the first-factor reduction of a pure state.
double entanglement_entropy(const PureState& psi);

/// Number of eigenvalues above kRankTol.
int numerical_rank(const DensityMatrix& rho);

}  // namespace eofkit
