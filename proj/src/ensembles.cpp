#include "eofkit/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/LU>
#include <unsupported/Eigen/KroneckerProduct>

#include "eofkit/random.hpp"

namespace eofkit {

Ensemble::Ensemble(std::vector<double> weights, std::vector<PureState> members) {
  if (weights.size() != members.size() || members.empty()) {
    throw Error(ErrorKind::BadShape, "ensemble needs matching, nonempty weight and member lists");
  }
  const BipartiteDims dims = members.front().dims();
  double sum = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!(members[i].dims() == dims)) {
      throw Error(ErrorKind::DimensionMismatch, "ensemble members have different dims");
    }
    if (weights[i] < 0.0 || !std::isfinite(weights[i])) {
      throw Error(ErrorKind::BadShape, "ensemble weight " + std::to_string(weights[i]));
    }
    sum += weights[i];
    if (weights[i] > kWeightDropTol) {
      weights_.push_back(weights[i]);
      members_.push_back(std::move(members[i]));
    }
  }
  if (std::abs(sum - 1.0) > kWeightSumTol || weights_.empty()) {
    throw Error(ErrorKind::TraceNotOne, "ensemble weights sum to " + std::to_string(sum));
  }
  const double kept = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  for (double& w : weights_) w /= kept;
}

Isometry::Isometry(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.cols() < 1 || entries_.rows() < entries_.cols()) {
    throw Error(ErrorKind::BadShape, "isometry must be m x r with m >= r >= 1");
  }
  const Eigen::Index r = entries_.cols();
  const double dev = (entries_.adjoint() * entries_ - CMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw Error(ErrorKind::BadShape, "columns not orthonormal, deviation " + std::to_string(dev));
}

namespace {

constexpr double kDegeneracyTol = 1e-9;

// X(x)X + sqrt(2) Z(x)Z^-1 plus adjoints. Its eigenvectors are the generalized
// Bell states, which fixes the basis inside degenerate eigenspaces.
CMatrix bell_tiebreak(int d) {
  const double pi = std::acos(-1.0);
  CMatrix x = CMatrix::Zero(d, d), z = CMatrix::Zero(d, d), zinv = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    x((k + 1) % d, k) = 1.0;
    z(k, k) = std::polar(1.0, 2.0 * pi * k / d);
    zinv(k, k) = std::conj(z(k, k));
  }
  const CMatrix xx = Eigen::kroneckerProduct(x, x).eval();
  const CMatrix zz = Eigen::kroneckerProduct(z, zinv).eval();
  return xx + xx.adjoint() + std::sqrt(2.0) * (zz + zz.adjoint());
}

void resolve_degeneracies(SupportBasis& basis, int d) {
  const Eigen::Index r = basis.eigenvalues.size();
  CMatrix tiebreak;
  Eigen::Index start = 0;
  while (start < r) {
    Eigen::Index end = start + 1;
    while (end < r && basis.eigenvalues(start) - basis.eigenvalues(end) < kDegeneracyTol) ++end;
    const Eigen::Index k = end - start;
    if (k > 1) {
      if (tiebreak.size() == 0) tiebreak = bell_tiebreak(d);
      const CMatrix q = basis.eigenvectors.middleCols(start, k);
      const HermitianSpectrum inner = hermitian_eigen(q.adjoint() * tiebreak * q);
      basis.eigenvectors.middleCols(start, k) = q * inner.vectors.rowwise().reverse();
      const double mean = basis.eigenvalues.segment(start, k).mean();
      basis.eigenvalues.segment(start, k).setConstant(mean);
    }
    start = end;
  }
}

}  // namespace

SupportBasis support_basis(const DensityMatrix& rho) {
  const HermitianSpectrum spec = hermitian_eigen(rho.matrix());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = spec.values.size() - 1; k >= 0; --k) {
    if (spec.values(k) > kRankTol) keep.push_back(k);
  }
  SupportBasis basis;
  basis.eigenvalues.resize(static_cast<Eigen::Index>(keep.size()));
  basis.eigenvectors.resize(spec.vectors.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t j = 0; j < keep.size(); ++j) {
    basis.eigenvalues(j) = spec.values(keep[j]);
    basis.eigenvectors.col(j) = spec.vectors.col(keep[j]);
  }
  if (rho.dims().d1 == rho.dims().d2) resolve_degeneracies(basis, rho.dims().d1);
  return basis;
}

DensityMatrix barycenter(const Ensemble& e) {
  const int n = e.dims().total();
  CMatrix acc = CMatrix::Zero(n, n);
  for (size_t i = 0; i < e.size(); ++i) {
    const CVector& v = e.members()[i].amplitudes();
    acc.noalias() += e.weights()[i] * (v * v.adjoint());
  }
  return validate_density(acc, e.dims());
}

Ensemble spectral_ensemble(const DensityMatrix& rho) {
  const SupportBasis basis = support_basis(rho);
  std::vector<double> weights;
  std::vector<PureState> members;
  const double total = basis.eigenvalues.sum();
  for (int j = 0; j < basis.rank(); ++j) {
    weights.push_back(basis.eigenvalues(j) / total);
    members.push_back(PureState::normalized(basis.eigenvectors.col(j), rho.dims()));
  }
  return Ensemble(std::move(weights), std::move(members));
}

Ensemble hjw_ensemble(const SupportBasis& basis, BipartiteDims dims, const CMatrix& u) {
  if (u.cols() != basis.rank()) {
    throw Error(ErrorKind::RankMismatch, "isometry has " + std::to_string(u.cols()) +
                                             " columns, state has rank " + std::to_string(basis.rank()));
  }
  const CMatrix w = basis.eigenvectors * basis.eigenvalues.cwiseSqrt().asDiagonal();
  const CMatrix v = u * w.transpose();  // row i is sqrt(p_i) psi_i
  std::vector<double> weights;
  std::vector<PureState> members;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    const double p = v.row(i).squaredNorm();
    if (p <= kWeightDropTol) continue;
    weights.push_back(p);
    members.push_back(PureState::normalized(v.row(i).transpose(), dims));
  }
  // The dropped rows and the discarded sub-threshold spectrum are absorbed here.
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& p : weights) p /= total;
  return Ensemble(std::move(weights), std::move(members));
}

Ensemble hjw_ensemble(const DensityMatrix& rho, const Isometry& u) {
  return hjw_ensemble(support_basis(rho), rho.dims(), u.matrix());
}

double average_entanglement(const Ensemble& e) {
  double acc = 0.0;
  for (size_t i = 0; i < e.size(); ++i) acc += e.weights()[i] * entanglement_entropy(e.members()[i]);
  return acc;
}

Ensemble mix_ensembles(const Ensemble& e1, const Ensemble& e2, double lambda) {
  if (!(e1.dims() == e2.dims())) throw Error(ErrorKind::DimensionMismatch, "mix_ensembles: dims differ");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorKind::ParamOutOfRange, "mixing weight must lie in [0, 1]");
  }
  std::vector<double> weights;
  std::vector<PureState> members;
  for (size_t i = 0; i < e1.size(); ++i) {
    weights.push_back(lambda * e1.weights()[i]);
    members.push_back(e1.members()[i]);
  }
  for (size_t i = 0; i < e2.size(); ++i) {
    weights.push_back((1.0 - lambda) * e2.weights()[i]);
    members.push_back(e2.members()[i]);
  }
  return Ensemble(std::move(weights), std::move(members));
}

Ensemble grouped_product(const Ensemble& e1, const Ensemble& e2) {
  const BipartiteDims a = e1.dims(), b = e2.dims();
  const FourFactorDims factors{a.d1, a.d2, b.d1, b.d2};
  const BipartiteDims grouped{a.d1 * b.d1, a.d2 * b.d2};
  std::vector<double> weights;
  std::vector<PureState> members;
  for (size_t i = 0; i < e1.size(); ++i)
    for (size_t j = 0; j < e2.size(); ++j) {
      const PureState joint = tensor_product(e1.members()[i], e2.members()[j]);
      weights.push_back(e1.weights()[i] * e2.weights()[j]);
      members.push_back(PureState::normalized(permute_to_grouped(joint.amplitudes(), factors), grouped));
    }
  return Ensemble(std::move(weights), std::move(members));
}

CMatrix qr_orthonormalize(const CMatrix& a) {
  const Eigen::Index m = a.rows(), r = a.cols();
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, r);
  const CMatrix& packed = qr.matrixQR();
  for (Eigen::Index k = 0; k < r; ++k) {
    const Complex rkk = packed(k, k);
    if (std::abs(rkk) > 0.0) q.col(k) *= rkk / std::abs(rkk);
  }
  return q;
}

Isometry random_isometry(int m, int r, std::uint64_t seed) {
  if (r < 1 || m < r) {
    throw Error(ErrorKind::BadShape, "random_isometry needs m >= r >= 1, got m=" + std::to_string(m) +
                                         ", r=" + std::to_string(r));
  }
  Rng rng(seed);
  CMatrix q = qr_orthonormalize(complex_gaussian(rng, m, r));
  for (int k = 0; k < r; ++k) {
    const Complex ukk = q(k, k);
    if (std::abs(ukk) > 0.0) q.col(k) *= std::conj(ukk) / std::abs(ukk);
  }
  return Isometry(std::move(q));
}

Ensemble reduce_support(const Ensemble& e) {
  const int n = e.dims().total();
  std::vector<double> q = e.weights();
  std::vector<PureState> members = e.members();
  std::vector<double> entropy;
  for (const PureState& m : members) entropy.push_back(entanglement_entropy(m));

  while (members.size() > 1) {
    // Column i holds the n^2 real coordinates of |psi_i><psi_i|.
    const auto k = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd a(n * n, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const CMatrix proj = members[static_cast<size_t>(i)].projector();
      Eigen::Index row = 0;
      for (int r = 0; r < n; ++r) {
        a(row++, i) = proj(r, r).real();
        for (int c = r + 1; c < n; ++c) {
          a(row++, i) = proj(r, c).real();
          a(row++, i) = proj(r, c).imag();
        }
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() == k) break;
    Eigen::VectorXd dir = lu.kernel().col(0);
    // Trace is one of the constraints, so sum(dir) = 0 and some entry is negative.
    double slope = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) slope += dir(i) * entropy[static_cast<size_t>(i)];
    if (slope > 0.0) dir = -dir;

    double step = std::numeric_limits<double>::infinity();
    size_t hit = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (dir(i) < 0.0 && q[static_cast<size_t>(i)] / -dir(i) < step) {
        step = q[static_cast<size_t>(i)] / -dir(i);
        hit = static_cast<size_t>(i);
      }
    }
    for (Eigen::Index i = 0; i < k; ++i) q[static_cast<size_t>(i)] = std::max(0.0, q[static_cast<size_t>(i)] + step * dir(i));
    q.erase(q.begin() + static_cast<std::ptrdiff_t>(hit));
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(hit));
    entropy.erase(entropy.begin() + static_cast<std::ptrdiff_t>(hit));
  }
  const double total = std::accumulate(q.begin(), q.end(), 0.0);
  for (double& w : q) w /= total;
  return Ensemble(std::move(q), std::move(members));
}

CMatrix isometry_from_ensemble(const SupportBasis& basis, const Ensemble& e, int m) {
  const int r = basis.rank();
  if (static_cast<int>(e.size()) > m) {
    throw Error(ErrorKind::RankMismatch, "ensemble has " + std::to_string(e.size()) +
                                             " members, cardinality is " + std::to_string(m));
  }
  CMatrix u = CMatrix::Zero(m, r);
  for (size_t i = 0; i < e.size(); ++i) {
    const CVector v = std::sqrt(e.weights()[i]) * e.members()[i].amplitudes();
    for (int j = 0; j < r; ++j) {
      u(static_cast<Eigen::Index>(i), j) =
          basis.eigenvectors.col(j).dot(v) / std::sqrt(basis.eigenvalues(j));
    }
  }
  const double dev = (u.adjoint() * u - CMatrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (dev > 1e-6) {
    throw Error(ErrorKind::RankMismatch,
                "ensemble does not decompose the state (isometry deviation " + std::to_string(dev) + ")");
  }
  // Polar projection back onto the isometries; for a near-isometry this is a tiny correction.
  Eigen::JacobiSVD<CMatrix> svd(u, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

double projector_distance(const PureState& a, const PureState& b) {
  return (a.projector() - b.projector()).cwiseAbs().maxCoeff();
}

}  // namespace eofkit
