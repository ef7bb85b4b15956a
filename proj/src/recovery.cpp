#include "partinv/recovery.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace partinv {

const char* to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::residual_small: return "residual_small";
    case HaltReason::support_stable: return "support_stable";
    case HaltReason::max_iterations: return "max_iterations";
  }
  return "unknown";
}

Index LRule::resolve(Index k, Index m) const {
  Index l = kind == Kind::fixed
                ? fixed_l
                : std::max(k, static_cast<Index>(std::lround(fraction * static_cast<double>(m))));
  if (l < k || l >= m)
    throw std::invalid_argument("LRule: resolved L must satisfy K <= L < M");
  return l;
}

IndexSet top_magnitude_indices(const Vector& v, Index count) {
  const Index n = v.size();
  count = std::min(count, n);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&v](Index a, Index b) {
                      const double fa = std::abs(v[a]);
                      const double fb = std::abs(v[b]);
                      return fa > fb || (fa == fb && a < b);
                    });
  order.resize(static_cast<std::size_t>(count));
  return IndexSet(std::move(order));
}

namespace {

void validate_problem(const DenseMatrix& phi, const Vector& y,
                      const RecoveryConfig& config) {
  if (phi.rows() != y.size())
    throw std::invalid_argument("recovery: dimension mismatch between phi and y");
  if (config.k < 1 || config.k > phi.cols())
    throw std::invalid_argument("recovery: K out of range");
  if (config.max_iterations < 1)
    throw std::invalid_argument("recovery: max_iterations must be positive");
}

// Prune to the K largest magnitudes of `estimate`, re-solve least squares on
// that support and recompute the exit residual.
RecoveryResult finalize_k_sparse(const DenseMatrix& phi, const Vector& y,
                                 const Vector& estimate, const RecoveryConfig& config,
                                 int iterations, HaltReason halt, bool flagged) {
  RecoveryResult result;
  result.support = top_magnitude_indices(estimate, config.k);
  const DenseMatrix sub = submatrix_columns(phi, result.support);
  LsqResult sol = least_squares(sub, y, config.solver);
  result.flagged = flagged || sol.flagged;
  result.c_hat = Vector::Zero(phi.cols());
  for (Index j = 0; j < result.support.size(); ++j)
    result.c_hat[result.support[j]] = sol.x[j];
  result.residual_norm = (y - sub * sol.x).norm();
  result.iterations = iterations;
  result.halt_reason = halt;
  return result;
}

// Shared loop of Algorithm 1 and its tree-scored variant: `reselect` maps the
// combined estimate to the next active set.
template <typename Reselect>
RecoveryResult partial_inversion_loop(const DenseMatrix& phi, const Vector& y,
                                      const RecoveryConfig& config,
                                      IndexSet active, Reselect reselect) {
  const Index n = phi.cols();
  const double y_norm = y.norm();
  Vector estimate = Vector::Zero(n);
  bool flagged = false;
  int iterations = 0;
  HaltReason halt = HaltReason::max_iterations;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    iterations = iter;
    const DenseMatrix sub = submatrix_columns(phi, active);
    LsqResult sol = least_squares(sub, y, config.solver);
    flagged = flagged || sol.flagged;

    const Vector residual = y - sub * sol.x;
    estimate.setZero();
    for (Index j = 0; j < active.size(); ++j) estimate[active[j]] = sol.x[j];
    for (Index j : active.complement(n))
      estimate[j] = phi.col(j).dot(residual);

    if ((y - phi * estimate).norm() <= config.residual_tol * y_norm) {
      halt = HaltReason::residual_small;
      break;
    }
    IndexSet next = reselect(estimate);
    if (next == active) {
      halt = HaltReason::support_stable;
      break;
    }
    active = std::move(next);
  }
  return finalize_k_sparse(phi, y, estimate, config, iterations, halt, flagged);
}

}  // namespace

RecoveryResult partinv(const DenseMatrix& phi, const Vector& y,
                       const RecoveryConfig& config) {
  validate_problem(phi, y, config);
  const Index l = config.l_rule.resolve(config.k, phi.rows());
  const Vector proxy = phi.transpose() * y;
  return partial_inversion_loop(
      phi, y, config, top_magnitude_indices(proxy, l),
      [l](const Vector& estimate) { return top_magnitude_indices(estimate, l); });
}

RecoveryResult cosamp(const DenseMatrix& phi, const Vector& y,
                      const RecoveryConfig& config) {
  validate_problem(phi, y, config);
  const Index n = phi.cols();
  const Index k = config.k;
  const double y_norm = y.norm();

  Vector c_hat = Vector::Zero(n);
  IndexSet support;
  Vector residual = y;
  bool flagged = false;
  int iterations = 0;
  HaltReason halt = HaltReason::max_iterations;

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    iterations = iter;
    const Vector proxy = phi.transpose() * residual;
    const IndexSet candidates = top_magnitude_indices(proxy, std::min(2 * k, n));

    std::vector<Index> merged(candidates.begin(), candidates.end());
    merged.insert(merged.end(), support.begin(), support.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    const IndexSet merged_set{std::move(merged)};

    const DenseMatrix sub = submatrix_columns(phi, merged_set);
    LsqResult sol = least_squares(sub, y, config.solver);
    flagged = flagged || sol.flagged;

    // prune to the K largest, ties toward the lower column index
    std::vector<Index> local(static_cast<std::size_t>(merged_set.size()));
    std::iota(local.begin(), local.end(), Index{0});
    const Index keep = std::min(k, merged_set.size());
    std::partial_sort(local.begin(), local.begin() + keep, local.end(),
                      [&](Index a, Index b) {
                        const double fa = std::abs(sol.x[a]);
                        const double fb = std::abs(sol.x[b]);
                        return fa > fb || (fa == fb && merged_set[a] < merged_set[b]);
                      });
    c_hat.setZero();
    std::vector<Index> new_support;
    new_support.reserve(static_cast<std::size_t>(keep));
    for (Index i = 0; i < keep; ++i) {
      new_support.push_back(merged_set[local[static_cast<std::size_t>(i)]]);
      c_hat[merged_set[local[static_cast<std::size_t>(i)]]] =
          sol.x[local[static_cast<std::size_t>(i)]];
    }
    IndexSet pruned{std::move(new_support)};
    residual = y - phi * c_hat;

    if (residual.norm() <= config.residual_tol * y_norm) {
      support = std::move(pruned);
      halt = HaltReason::residual_small;
      break;
    }
    if (pruned == support) {
      halt = HaltReason::support_stable;
      break;
    }
    support = std::move(pruned);
  }

  RecoveryResult result;
  result.c_hat = std::move(c_hat);
  result.support = std::move(support);
  result.iterations = iterations;
  result.halt_reason = halt;
  result.flagged = flagged;
  result.residual_norm = (y - phi * result.c_hat).norm();
  return result;
}

RecoveryResult l1_baseline(const DenseMatrix& phi, const Vector& y,
                           const RecoveryConfig& config) {
  validate_problem(phi, y, config);
  constexpr int kStages = 10;
  constexpr int kInnerIterations = 200;

  const Index n = phi.cols();
  const double y_norm = y.norm();
  const double lambda0 = (phi.transpose() * y).lpNorm<Eigen::Infinity>() / 2.0;
  const double lipschitz = std::max(gram_spectral_norm(phi), 1e-300);
  const double step = 1.0 / lipschitz;

  Vector c = Vector::Zero(n);
  int total_iterations = 0;

  if (lambda0 > 0.0) {
    double lambda = lambda0;
    for (int stage = 0; stage < kStages; ++stage, lambda *= 0.5) {
      Vector momentum = c;
      Vector prev = c;
      double t = 1.0;
      for (int it = 0; it < kInnerIterations; ++it) {
        ++total_iterations;
        const Vector grad = phi.transpose() * (phi * momentum - y);
        Vector next = momentum - step * grad;
        const double shrink = step * lambda;
        for (Index i = 0; i < n; ++i) {
          const double v = next[i];
          next[i] = v > shrink ? v - shrink : (v < -shrink ? v + shrink : 0.0);
        }
        const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        momentum = next + ((t - 1.0) / t_next) * (next - prev);
        t = t_next;
        const double change = (next - prev).lpNorm<Eigen::Infinity>();
        prev = std::move(next);
        if (change <= 1e-10 * std::max(1.0, prev.lpNorm<Eigen::Infinity>())) break;
      }
      c = prev;
    }
  }

  RecoveryResult result = finalize_k_sparse(phi, y, c, config, total_iterations,
                                            HaltReason::max_iterations, false);
  if (result.residual_norm <= config.residual_tol * y_norm)
    result.halt_reason = HaltReason::residual_small;
  return result;
}

Vector tree_scores(const Vector& z, const SetPartition& partition) {
  if (partition.total != z.size())
    throw std::invalid_argument("tree_scores: partition does not cover z");
  Vector scores(partition.set_count());
  for (Index j = 0; j < partition.set_count(); ++j) {
    double s = 0.0;
    for (Index l : partition.sets[static_cast<std::size_t>(j)]) s += std::abs(z[l]);
    scores[j] = s;
  }
  return scores;
}

IndexSet select_tree_support(const Vector& scores, const SetPartition& partition,
                             Index k) {
  std::vector<Index> order(static_cast<std::size_t>(partition.set_count()));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&scores](Index a, Index b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  });
  std::vector<Index> columns;
  for (Index set_index : order) {
    if (static_cast<Index>(columns.size()) >= k) break;
    const auto& s = partition.sets[static_cast<std::size_t>(set_index)];
    columns.insert(columns.end(), s.begin(), s.end());
  }
  return IndexSet(std::move(columns));
}

RecoveryResult partinv_wavelet(const DenseMatrix& phi, const Vector& y, Index k,
                               const SetPartition& partition,
                               const RecoveryConfig& config) {
  RecoveryConfig cfg = config;
  cfg.k = k;
  validate_problem(phi, y, cfg);
  if (partition.total != phi.cols())
    throw std::invalid_argument("partinv_wavelet: partition does not match phi");

  const Vector proxy = phi.transpose() * y;
  IndexSet initial = select_tree_support(tree_scores(proxy, partition), partition, k);
  return partial_inversion_loop(
      phi, y, cfg, std::move(initial), [&partition, k](const Vector& estimate) {
        return select_tree_support(tree_scores(estimate, partition), partition, k);
      });
}

EstimatorDecomposition estimator_decomposition(const DenseMatrix& phi,
                                               const Vector& c_true,
                                               const IndexSet& active) {
  if (phi.cols() != c_true.size())
    throw std::invalid_argument("estimator_decomposition: dimension mismatch");
  const Index n = phi.cols();
  const DenseMatrix sub = submatrix_columns(phi, active);
  const IndexSet rest = active.complement(n);

  Vector c_active(active.size());
  for (Index j = 0; j < active.size(); ++j) c_active[j] = c_true[active[j]];

  // Phi_~I c_~I without materializing the complement submatrix
  Vector cross_signal = Vector::Zero(phi.rows());
  for (Index j : rest) {
    if (c_true[j] != 0.0) cross_signal += c_true[j] * phi.col(j);
  }

  const DenseMatrix gram = sub.transpose() * sub;
  Eigen::LLT<DenseMatrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("estimator_decomposition: Phi_I is rank deficient");

  EstimatorDecomposition out;
  out.cosamp_cross_noise = sub.transpose() * cross_signal;
  out.partinv_noise = llt.solve(out.cosamp_cross_noise);
  out.cosamp_self_noise = gram * c_active - c_active;
  if (!out.partinv_noise.allFinite())
    throw std::runtime_error("estimator_decomposition: Phi_I is rank deficient");
  return out;
}

}  // namespace partinv
