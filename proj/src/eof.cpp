#include "eofkit/eof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "eofkit/random.hpp"

namespace eofkit {

namespace {

using RowMajorCMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Floor for ln(mu) in the gradient; the matching amplitude component is O(sqrt(mu)).
constexpr double kLogFloor = 1e-300;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 50;
constexpr int kStallPatience = 3;

double real_inner(const CMatrix& a, const CMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum().real(); }

CMatrix tangent_projection(const CMatrix& u, const CMatrix& g) {
  const CMatrix s = u.adjoint() * g;
  return g - u * (0.5 * (s + s.adjoint()));
}

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  CMatrix u;
  bool converged = false;
};

CMatrix padded_identity(int m, int r) { return CMatrix::Identity(m, r); }

EofResult pure_state_result(const SupportBasis& basis, BipartiteDims dims) {
  const PureState psi = PureState::normalized(basis.eigenvectors.col(0), dims);
  const double value = entanglement_entropy(psi);
  return EofResult{value, Ensemble({1.0}, {psi}), {value}, true};
}

EofResult estimate(const DensityMatrix& rho, const EofConfig& cfg, const std::vector<Ensemble>& warm_starts,
                   bool parallel) {
  const SupportBasis basis = support_basis(rho);
  const int r = basis.rank();
  const int m = resolve_cardinality(cfg, r, rho.dims());
  if (r == 1) return pure_state_result(basis, rho.dims());

  std::vector<CMatrix> starts;
  starts.reserve(static_cast<size_t>(cfg.restarts) + warm_starts.size() + 1);
  for (int k = 0; k < cfg.restarts; ++k) {
    starts.push_back(random_isometry(m, r, derive_seed(cfg.seed, static_cast<std::uint64_t>(k))).matrix());
  }
  for (const Ensemble& e : warm_starts) {
    if (!(e.dims() == rho.dims())) throw Error(ErrorKind::DimensionMismatch, "warm start dims differ");
    const Ensemble start = static_cast<int>(e.size()) > m ? reduce_support(e) : e;
    starts.push_back(isometry_from_ensemble(basis, start, std::max(m, static_cast<int>(start.size()))));
  }
  starts.push_back(padded_identity(m, r));

  const DecompositionObjective objective(basis, rho.dims());
  const int count = static_cast<int>(starts.size());
  std::vector<RestartOutcome> outcomes(starts.size());

  auto run = [&](int k) {
    LocalSearchResult local =
        minimize_over_isometries(objective, starts[static_cast<size_t>(k)], cfg.max_iterations, cfg.objective_tolerance);
    outcomes[static_cast<size_t>(k)] = {local.value, std::move(local.u), local.converged};
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < count; ++k) run(k);
  } else {
    for (int k = 0; k < count; ++k) run(k);
  }

  size_t best = 0;
  std::vector<double> values;
  values.reserve(outcomes.size());
  for (size_t k = 0; k < outcomes.size(); ++k) {
    values.push_back(outcomes[k].value);
    if (outcomes[k].value < outcomes[best].value) best = k;
  }
  Ensemble witness = hjw_ensemble(basis, rho.dims(), outcomes[best].u);
  return EofResult{outcomes[best].value, std::move(witness), std::move(values), outcomes[best].converged};
}

}  // namespace

int support_size_bound(BipartiteDims dims) {
  const int n = dims.total();
  return (2 * n) * (2 * n) + 1;
}

int resolve_cardinality(const EofConfig& cfg, int rank, BipartiteDims dims) {
  if (cfg.restarts < 1) throw Error(ErrorKind::ConfigError, "restarts must be >= 1");
  if (cfg.max_iterations < 1) throw Error(ErrorKind::ConfigError, "max_iterations must be >= 1");
  if (!(cfg.objective_tolerance >= 0.0)) throw Error(ErrorKind::ConfigError, "objective_tolerance must be >= 0");
  const int m = cfg.cardinality.value_or(rank * rank);
  if (m < rank) {
    throw Error(ErrorKind::ConfigError,
                "cardinality " + std::to_string(m) + " is below the state rank " + std::to_string(rank));
  }
  if (m > support_size_bound(dims)) {
    throw Error(ErrorKind::ConfigError, "cardinality " + std::to_string(m) + " exceeds the support bound " +
                                            std::to_string(support_size_bound(dims)));
  }
  return m;
}

DecompositionObjective::DecompositionObjective(const SupportBasis& basis, BipartiteDims dims)
    : weighted_basis_(basis.eigenvectors * basis.eigenvalues.cwiseSqrt().asDiagonal()), dims_(dims) {}

double DecompositionObjective::value(const CMatrix& u) const { return evaluate(u, nullptr); }

double DecompositionObjective::value_and_gradient(const CMatrix& u, CMatrix& gradient) const {
  return evaluate(u, &gradient);
}

// Member i has unnormalized amplitudes v_i = sum_j U_ij w_j, reshaped to the d1 x d2
// matrix M_i. With sigma_i the reduced operator on the smaller factor and
// p_i = tr sigma_i, the member contributes p_i S(sigma_i / p_i). Its derivative in
// sigma_i is -ln(sigma_i / p_i), which pulls back through M_i to v_i and then to U.
double DecompositionObjective::evaluate(const CMatrix& u, CMatrix* gradient) const {
  const int d1 = dims_.d1, d2 = dims_.d2;
  const bool reduce_first = d1 <= d2;
  const int k = reduce_first ? d1 : d2;
  const Eigen::Index m = u.rows();
  const Eigen::Index n = weighted_basis_.rows();

  const CMatrix vt = weighted_basis_ * u.transpose();  // column i is v_i
  CMatrix gt;
  if (gradient) gt = CMatrix::Zero(n, m);

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(k);
  CMatrix sigma(k, k);
  double total = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Map<const RowMajorCMatrix> mi(vt.col(i).data(), d1, d2);
    if (reduce_first) {
      sigma.noalias() = mi * mi.adjoint();
    } else {
      sigma.noalias() = mi.adjoint() * mi;
    }
    const double p = sigma.trace().real();
    if (!(p > std::numeric_limits<double>::min())) continue;

    solver.compute(sigma / p, gradient ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    const RVector& mu = solver.eigenvalues();
    double s = 0.0;
    for (double x : mu) {
      if (x > 0.0) s -= x * std::log(x);
    }
    total += p * s;

    if (gradient) {
      RVector neg_log(k);
      for (int a = 0; a < k; ++a) neg_log(a) = -std::log(std::max(mu(a), kLogFloor));
      const CMatrix& vecs = solver.eigenvectors();
      const CMatrix g_sigma = vecs * neg_log.asDiagonal() * vecs.adjoint();
      Eigen::Map<RowMajorCMatrix> gi(gt.col(i).data(), d1, d2);
      if (reduce_first) {
        gi.noalias() = g_sigma * mi;
      } else {
        gi.noalias() = mi * g_sigma;
      }
    }
  }
  if (gradient) *gradient = 2.0 * gt.transpose() * weighted_basis_.conjugate();
  return total;
}

LocalSearchResult minimize_over_isometries(const DecompositionObjective& objective, CMatrix u0, int max_iterations,
                                           double objective_tolerance) {
  LocalSearchResult out;
  out.u = qr_orthonormalize(u0);
  CMatrix grad;
  out.value = objective.value_and_gradient(out.u, grad);
  out.history.push_back(out.value);
  CMatrix xi = tangent_projection(out.u, grad);

  double step = 1.0;
  int stalled = 0;
  for (int it = 0; it < max_iterations; ++it) {
    const double gnorm2 = real_inner(xi, xi);
    if (gnorm2 < 1e-28) {
      out.converged = true;
      break;
    }
    double t = step;
    bool accepted = false;
    CMatrix u_new;
    double f_new = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      u_new = qr_orthonormalize(out.u - t * xi);
      f_new = objective.value(u_new);
      if (f_new <= out.value - kArmijo * t * gnorm2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No descent left at working precision.
      out.converged = true;
      break;
    }

    CMatrix grad_new;
    objective.value_and_gradient(u_new, grad_new);
    const CMatrix xi_new = tangent_projection(u_new, grad_new);
    const CMatrix s = u_new - out.u;
    const CMatrix y = xi_new - xi;
    const double sy = real_inner(s, y);
    step = sy > 0.0 ? std::clamp(real_inner(s, s) / sy, 1e-8, 1e4) : std::min(2.0 * t, 1e4);

    const double improvement = out.value - f_new;
    out.u = std::move(u_new);
    out.value = f_new;
    xi = xi_new;
    out.history.push_back(f_new);

    stalled = improvement < objective_tolerance ? stalled + 1 : 0;
    if (stalled >= kStallPatience) {
      out.converged = true;
      break;
    }
  }
  return out;
}

EofResult eof_estimate(const DensityMatrix& rho, const EofConfig& cfg, const std::vector<Ensemble>& warm_starts) {
  return estimate(rho, cfg, warm_starts, true);
}

EofResult eof_estimate_serial(const DensityMatrix& rho, const EofConfig& cfg,
                              const std::vector<Ensemble>& warm_starts) {
  return estimate(rho, cfg, warm_starts, false);
}

double spectral_upper_bound(const DensityMatrix& rho) { return average_entanglement(spectral_ensemble(rho)); }

double cnt_entropy(const DensityMatrix& rho, const EofResult& estimate) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::first)) - estimate.value;
}

double cnt_entropy(const DensityMatrix& rho, const EofConfig& cfg) { return cnt_entropy(rho, eof_estimate(rho, cfg)); }

ConvexityTerms convexity_terms(const DensityMatrix& rho1, const DensityMatrix& rho2, double lambda,
                               const EofConfig& cfg) {
  if (!(rho1.dims() == rho2.dims())) throw Error(ErrorKind::DimensionMismatch, "convexity_gap: dims differ");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorKind::ParamOutOfRange, "lambda must lie in [0, 1]");

  EofResult first = eof_estimate(rho1, cfg);
  EofResult second = eof_estimate(rho2, cfg);

  // Endpoints and identical inputs: the mixture is one of the inputs exactly.
  if (lambda == 1.0 || rho1.matrix() == rho2.matrix()) {
    EofResult mixture = first;
    return {lambda, std::move(first), std::move(second), std::move(mixture)};
  }
  if (lambda == 0.0) {
    EofResult mixture = second;
    return {lambda, std::move(first), std::move(second), std::move(mixture)};
  }
  const DensityMatrix mixed_state =
      validate_density(lambda * rho1.matrix() + (1.0 - lambda) * rho2.matrix(), rho1.dims());
  const Ensemble warm = mix_ensembles(first.witness, second.witness, lambda);
  EofResult mixture = eof_estimate(mixed_state, cfg, {warm});
  return {lambda, std::move(first), std::move(second), std::move(mixture)};
}

double convexity_gap(const DensityMatrix& rho1, const DensityMatrix& rho2, double lambda, const EofConfig& cfg) {
  return convexity_terms(rho1, rho2, lambda, cfg).gap();
}

DensityMatrix grouped_square(const DensityMatrix& rho) {
  const BipartiteDims d = rho.dims();
  return permute_to_grouped(tensor_product(rho, rho), FourFactorDims{d.d1, d.d2, d.d1, d.d2});
}

SubadditivityTerms subadditivity_terms(const DensityMatrix& rho, const EofConfig& cfg) {
  EofResult single = eof_estimate(rho, cfg);
  const DensityMatrix doubled = grouped_square(rho);
  const Ensemble warm = grouped_product(single.witness, single.witness);
  EofConfig doubled_cfg = cfg;
  doubled_cfg.cardinality.reset();
  EofResult doubled_result = eof_estimate(doubled, doubled_cfg, {warm});
  return {std::move(single), std::move(doubled_result)};
}

}  // namespace eofkit
