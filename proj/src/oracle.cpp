#include "eofkit/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

namespace eofkit::oracle {

namespace {

void require_two_qubits(const DensityMatrix& rho) {
  if (!(rho.dims() == BipartiteDims{2, 2})) {
    throw Error(ErrorKind::DimensionMismatch, "two-qubit oracle needs dims (2, 2)");
  }
}

using Unitary4 = Eigen::Matrix4cd;

// Average entanglement of {v_i = sum_j U_ij w_j}. For a two-qubit vector
// (a, b, c, d) the reduced spectrum is (1 +- sqrt(1 - 4|ad - bc|^2 / p^2)) / 2.
double decomposition_value(const Unitary4& u, const Unitary4& w) {
  const Unitary4 v = u * w.transpose();  // row i holds v_i
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double p = v.row(i).squaredNorm();
    if (p <= 0.0) continue;
    const double det = std::abs(v(i, 0) * v(i, 3) - v(i, 1) * v(i, 2)) / p;
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det * det));
    total += p * binary_entropy(0.5 * (1.0 + disc));
  }
  return total;
}

Unitary4 haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Unitary4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<Unitary4> qr(g);
  Unitary4 q = qr.householderQ();
  for (int k = 0; k < 4; ++k) {
    const Complex d = qr.matrixQR()(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q;
}

// Left-multiplies rows (i, k) by [[c, -e^{-i phi} s], [e^{i phi} s, c]].
void apply_givens(Unitary4& u, int i, int k, double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex e = std::polar(1.0, phi);
  const Eigen::RowVector4cd ri = u.row(i), rk = u.row(k);
  u.row(i) = c * ri - std::conj(e) * s * rk;
  u.row(k) = e * s * ri + c * rk;
}

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

double polish(Unitary4 u, const Unitary4& w) {
  double best = decomposition_value(u, w);
  for (double step = 0.4; step > 1e-7; step *= 0.5) {
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps++ < 50) {
      improved = false;
      for (const auto& [i, k] : kPairs) {
        for (int coord = 0; coord < 2; ++coord) {
          for (double sign : {1.0, -1.0}) {
            Unitary4 trial = u;
            // Real and imaginary rotations on every row pair generate SU(4).
            apply_givens(trial, i, k, sign * step, coord == 0 ? 0.0 : 1.5707963267948966);
            const double f = decomposition_value(trial, w);
            if (f < best) {
              best = f;
              u = trial;
              improved = true;
            }
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "Werner parameter " + std::to_string(p));
  const CMatrix mix = p * singlet().projector() + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
  return validate_density(mix, {2, 2});
}

double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
  return h;
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix& m = rho.matrix();
  const CMatrix tilde = yy * m.conjugate() * yy;
  // The eigenvalues of rho * tilde equal those of the Hermitian sqrt(rho) tilde sqrt(rho).
  const HermitianSpectrum spec = hermitian_eigen(m);
  const RVector roots = spec.values.cwiseMax(0.0).cwiseSqrt();
  const CMatrix sqrt_rho = spec.vectors * roots.asDiagonal() * spec.vectors.adjoint();
  RVector ev = hermitian_eigenvalues(sqrt_rho * tilde * sqrt_rho);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[static_cast<size_t>(i)] = std::sqrt(std::max(ev(i), 0.0));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double wootters_eof(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

double brute_force_eof(const DensityMatrix& rho, int budget, std::uint64_t seed) {
  require_two_qubits(rho);
  if (budget < 1) throw Error(ErrorKind::ConfigError, "budget must be positive");

  // Columns sqrt(lambda_j) e_j; a full 4x4 unitary covers every rank.
  const HermitianSpectrum spec = hermitian_eigen(rho.matrix());
  Unitary4 w = spec.vectors * spec.values.cwiseMax(0.0).cwiseSqrt().asDiagonal();

  std::mt19937_64 rng(seed);
  constexpr size_t kPolished = 8;
  std::vector<std::pair<double, Unitary4>> pool;
  pool.reserve(static_cast<size_t>(budget));
  for (int s = 0; s < budget; ++s) {
    Unitary4 u = haar_unitary(rng);
    pool.emplace_back(decomposition_value(u, w), u);
  }
  const size_t keep = std::min(kPolished, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = pool.front().first;
  for (size_t i = 0; i < keep; ++i) best = std::min(best, polish(pool[i].second, w));
  return best;
}

}  // namespace eofkit::oracle
