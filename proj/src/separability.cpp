#include "eofkit/separability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eofkit/random.hpp"

namespace eofkit {

namespace {

bool horodecki_dims(const BipartiteDims& d) {
  return (d.d1 == 2 && d.d2 == 2) || (d.d1 == 2 && d.d2 == 3) || (d.d1 == 3 && d.d2 == 2);
}

// <a| P |a> contracted on the first factor (d2 x d2), or on the second (d1 x d1).
CMatrix contract_first(const CMatrix& p, const CVector& a, BipartiteDims d) {
  CMatrix out = CMatrix::Zero(d.d2, d.d2);
  for (int i = 0; i < d.d1; ++i)
    for (int k = 0; k < d.d1; ++k) out += std::conj(a(i)) * a(k) * p.block(i * d.d2, k * d.d2, d.d2, d.d2);
  return out;
}

CMatrix contract_second(const CMatrix& p, const CVector& b, BipartiteDims d) {
  CMatrix out(d.d1, d.d1);
  for (int i = 0; i < d.d1; ++i)
    for (int k = 0; k < d.d1; ++k) out(i, k) = b.dot(p.block(i * d.d2, k * d.d2, d.d2, d.d2) * b);
  return out;
}

// Top eigenpair of a Hermitian matrix.
std::pair<double, CVector> top_eigen(const CMatrix& m) {
  const HermitianSpectrum spec = hermitian_eigen(m);
  const Eigen::Index last = spec.values.size() - 1;
  return {spec.values(last), spec.vectors.col(last)};
}

}  // namespace

SeparabilityVerdict ppt_check(const DensityMatrix& rho) {
  const double min_eig = hermitian_eigenvalues(partial_transpose(rho)).minCoeff();
  return {min_eig >= -kPptTol, min_eig, horodecki_dims(rho.dims())};
}

DensityMatrix random_separable(BipartiteDims dims, int k, std::uint64_t seed) {
  check_dims(dims);
  if (k < 1) throw Error(ErrorKind::BadShape, "random_separable needs k >= 1");
  Rng rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> weights(static_cast<size_t>(k));
  double total = 0.0;
  for (double& w : weights) total += (w = exponential(rng));

  const int n = dims.total();
  CMatrix acc = CMatrix::Zero(n, n);
  for (double w : weights) {
    const CVector a = random_unit_vector(rng, dims.d1);
    const CVector b = random_unit_vector(rng, dims.d2);
    const CVector v = product_state(a, b).amplitudes();
    acc += (w / total) * (v * v.adjoint());
  }
  return validate_density(acc, dims);
}

DensityMatrix random_density(BipartiteDims dims, int rank, std::uint64_t seed) {
  check_dims(dims);
  if (rank < 1 || rank > dims.total()) {
    throw Error(ErrorKind::BadShape, "rank must lie in [1, " + std::to_string(dims.total()) + "]");
  }
  Rng rng(seed);
  const CMatrix g = complex_gaussian(rng, dims.total(), rank);
  const CMatrix m = g * g.adjoint();
  return validate_density(m / m.trace().real(), dims);
}

std::vector<CVector> tiles_upb_vectors() {
  const double h = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  auto ket = [](std::initializer_list<double> c) {
    CVector v(static_cast<Eigen::Index>(c.size()));
    Eigen::Index i = 0;
    for (double x : c) v(i++) = x;
    return v;
  };
  auto prod = [](const CVector& a, const CVector& b) { return product_state(a, b).amplitudes(); };
  return {
      prod(ket({1, 0, 0}), ket({h, -h, 0})),
      prod(ket({0, 0, 1}), ket({0, h, -h})),
      prod(ket({h, -h, 0}), ket({0, 0, 1})),
      prod(ket({0, h, -h}), ket({1, 0, 0})),
      prod(ket({t, t, t}), ket({t, t, t})),
  };
}

CMatrix tiles_complement_projector() {
  CMatrix p = CMatrix::Identity(9, 9);
  for (const CVector& v : tiles_upb_vectors()) p -= v * v.adjoint();
  return p;
}

DensityMatrix tiles_upb_state() {
  const CMatrix p = tiles_complement_projector();
  return validate_density(p / p.trace().real(), {3, 3});
}

OverlapSearchResult max_product_overlap_search(const CMatrix& projector, BipartiteDims dims,
                                               const OverlapSearchConfig& cfg) {
  check_dims(dims);
  const int n = dims.total();
  if (projector.rows() != n || projector.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "projector size does not match dims");
  }
  const double idem = (projector * projector - projector).cwiseAbs().maxCoeff();
  const double herm = (projector - projector.adjoint()).cwiseAbs().maxCoeff();
  if (idem > 1e-9 || herm > 1e-9) {
    throw Error(ErrorKind::NotAProjector, "|P^2 - P| = " + std::to_string(idem));
  }
  if (cfg.restarts < 1 || cfg.max_iterations < 1) throw Error(ErrorKind::ConfigError, "bad overlap search config");

  OverlapSearchResult best;
  best.value = -1.0;
  for (int k = 0; k < cfg.restarts; ++k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    CVector a = random_unit_vector(rng, dims.d1);
    CVector b;
    std::vector<double> trace;
    double value = -1.0;
    for (int it = 0; it < cfg.max_iterations; ++it) {
      auto [vb, new_b] = top_eigen(contract_first(projector, a, dims));
      b = std::move(new_b);
      trace.push_back(vb);
      auto [va, new_a] = top_eigen(contract_second(projector, b, dims));
      a = std::move(new_a);
      trace.push_back(va);
      const bool done = std::abs(va - value) < 1e-10;
      value = va;
      if (done) break;
    }
    if (value > best.value) best = {value, a, b, std::move(trace)};
  }
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

double max_product_overlap(const CMatrix& projector, BipartiteDims dims, const OverlapSearchConfig& cfg) {
  return max_product_overlap_search(projector, dims, cfg).value;
}

}  // namespace eofkit
