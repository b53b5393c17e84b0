#include "eofkit/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eofkit {

namespace {

using RowMajorCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_square(const CMatrix& m, int n) {
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

int factor_product(const FourFactorDims& f) {
  for (int d : f) {
    if (d < 1) throw Error(ErrorKind::DimensionMismatch, "four-factor dimensions must be positive");
  }
  return f[0] * f[1] * f[2] * f[3];
}

// Flat index of (a1, a2, b1, b2) in the grouped order (a1, b1, a2, b2).
struct GroupedIndex {
  FourFactorDims f;
  std::vector<int> map;

  explicit GroupedIndex(const FourFactorDims& factors) : f(factors) {
    map.resize(static_cast<size_t>(factor_product(f)));
    int src = 0;
    for (int a1 = 0; a1 < f[0]; ++a1)
      for (int a2 = 0; a2 < f[1]; ++a2)
        for (int b1 = 0; b1 < f[2]; ++b1)
          for (int b2 = 0; b2 < f[3]; ++b2) {
            map[static_cast<size_t>(src++)] = ((a1 * f[2] + b1) * f[1] + a2) * f[3] + b2;
          }
  }
};

}  // namespace

HermitianSpectrum hermitian_eigen(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double entropy_of_spectrum(const RVector& eigenvalues) {
  double s = 0.0;
  for (double x : eigenvalues) {
    if (x < -kClampTol) {
      throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(x));
    }
    if (x > 0.0) s -= x * std::log(x);
  }
  return std::max(s, 0.0);
}

DensityMatrix validate_density(const CMatrix& entries, BipartiteDims dims) {
  check_dims(dims);
  require_square(entries, dims.total());

  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw Error(ErrorKind::NotHermitian, "max |M - M^dagger| = " + std::to_string(asym));
  }
  CMatrix sym = hermitian_part(entries);
  const double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorKind::TraceNotOne, "trace = " + std::to_string(tr));
  }
  const double min_eig = hermitian_eigenvalues(sym).minCoeff();
  if (min_eig < -kPsdTol) {
    throw Error(ErrorKind::NotPositive, "minimum eigenvalue = " + std::to_string(min_eig));
  }
  return DensityMatrix(std::move(sym), dims);
}

PureState::PureState(CVector amplitudes, BipartiteDims dims)
    : amplitudes_(std::move(amplitudes)), dims_(dims) {
  check_dims(dims_);
  if (amplitudes_.size() != dims_.total()) {
    throw Error(ErrorKind::DimensionMismatch,
                "amplitude vector has length " + std::to_string(amplitudes_.size()) +
                    ", expected " + std::to_string(dims_.total()));
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kPureNormTol) {
    throw Error(ErrorKind::NotNormalized, "norm = " + std::to_string(norm));
  }
}

PureState PureState::normalized(const CVector& v, BipartiteDims dims) {
  const double norm = v.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::NotNormalized, "zero vector");
  return PureState(v / norm, dims);
}

CMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

DensityMatrix PureState::density() const { return validate_density(projector(), dims_); }

PureState singlet() {
  CVector v = CVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return PureState(v, {2, 2});
}

PureState max_entangled(int d) {
  if (d < 1) throw Error(ErrorKind::BadShape, "dimension must be positive");
  CVector v = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState::normalized(v, {d, d});
}

PureState product_state(const CVector& a, const CVector& b) {
  CVector v(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) v.segment(i * b.size(), b.size()) = a(i) * b;
  return PureState::normalized(v, {static_cast<int>(a.size()), static_cast<int>(b.size())});
}

DensityMatrix maximally_mixed(BipartiteDims dims) {
  check_dims(dims);
  const int n = dims.total();
  return validate_density(CMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  const CMatrix& ma = a.matrix();
  const CMatrix& mb = b.matrix();
  const Eigen::Index nb = mb.rows();
  CMatrix out(ma.rows() * nb, ma.cols() * nb);
  for (Eigen::Index i = 0; i < ma.rows(); ++i)
    for (Eigen::Index j = 0; j < ma.cols(); ++j) out.block(i * nb, j * nb, nb, nb) = ma(i, j) * mb;
  return validate_density(out, {a.size(), b.size()});
}

PureState tensor_product(const PureState& a, const PureState& b) {
  const CVector& va = a.amplitudes();
  const CVector& vb = b.amplitudes();
  CVector v(va.size() * vb.size());
  for (Eigen::Index i = 0; i < va.size(); ++i) v.segment(i * vb.size(), vb.size()) = va(i) * vb;
  return PureState::normalized(v, {a.dims().total(), b.dims().total()});
}

CMatrix reduce_to_first(const CMatrix& m, BipartiteDims dims) {
  const int d1 = dims.d1, d2 = dims.d2;
  CMatrix out = CMatrix::Zero(d1, d1);
  for (int i = 0; i < d1; ++i)
    for (int k = 0; k < d1; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < d2; ++j) acc += m(i * d2 + j, k * d2 + j);
      out(i, k) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const int d1 = rho.dims().d1, d2 = rho.dims().d2;
  const CMatrix& m = rho.matrix();
  if (keep == Subsystem::first) {
    return validate_density(reduce_to_first(m, rho.dims()), {d1, 1});
  }
  CMatrix out = CMatrix::Zero(d2, d2);
  for (int j = 0; j < d2; ++j)
    for (int l = 0; l < d2; ++l) {
      Complex acc = 0.0;
      for (int i = 0; i < d1; ++i) acc += m(i * d2 + j, i * d2 + l);
      out(j, l) = acc;
    }
  return validate_density(out, {1, d2});
}

CMatrix partial_transpose(const CMatrix& m, BipartiteDims dims) {
  check_dims(dims);
  require_square(m, dims.total());
  const int d1 = dims.d1, d2 = dims.d2;
  CMatrix out(m.rows(), m.cols());
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2) out(i1 * d2 + j2, j1 * d2 + i2) = m(i1 * d2 + i2, j1 * d2 + j2);
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho) {
  return hermitian_part(partial_transpose(rho.matrix(), rho.dims()));
}

CMatrix permute_to_grouped(const CMatrix& m, FourFactorDims factors) {
  const int n = factor_product(factors);
  require_square(m, n);
  const GroupedIndex idx(factors);
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(idx.map[r], idx.map[c]) = m(r, c);
  return out;
}

CVector permute_to_grouped(const CVector& v, FourFactorDims factors) {
  const int n = factor_product(factors);
  if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector length does not match factors");
  const GroupedIndex idx(factors);
  CVector out(n);
  for (int r = 0; r < n; ++r) out(idx.map[r]) = v(r);
  return out;
}

DensityMatrix permute_to_grouped(const DensityMatrix& rho, FourFactorDims factors) {
  if (factor_product(factors) != rho.size()) {
    throw Error(ErrorKind::DimensionMismatch, "state size does not factor as given");
  }
  return validate_density(permute_to_grouped(rho.matrix(), factors),
                          {factors[0] * factors[2], factors[1] * factors[3]});
}

RVector schmidt_coefficients(const PureState& psi) {
  const auto& d = psi.dims();
  Eigen::Map<const RowMajorCMatrix> amp(psi.amplitudes().data(), d.d1, d.d2);
  Eigen::JacobiSVD<CMatrix> svd{CMatrix(amp)};
  return svd.singularValues();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (!(a.dims() == b.dims())) throw Error(ErrorKind::DimensionMismatch, "trace_distance: dims differ");
  return 0.5 * hermitian_eigenvalues(a.matrix() - b.matrix()).cwiseAbs().sum();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

double entanglement_entropy(const PureState& psi) {
  const auto& d = psi.dims();
  Eigen::Map<const RowMajorCMatrix> amp(psi.amplitudes().data(), d.d1, d.d2);
  RVector spectrum = hermitian_eigenvalues(amp * amp.adjoint());
  for (double& x : spectrum) x = std::max(x, 0.0);
  return entropy_of_spectrum(spectrum);
}

int numerical_rank(const DensityMatrix& rho) {
  const RVector ev = hermitian_eigenvalues(rho.matrix());
  return static_cast<int>((ev.array() > kRankTol).count());
}

}  // namespace eofkit
