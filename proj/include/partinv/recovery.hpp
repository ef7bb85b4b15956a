#pragma once

#include "partinv/linalg.hpp"
#include "partinv/types.hpp"

namespace partinv {

enum class HaltReason { residual_small, support_stable, max_iterations };

const char* to_string(HaltReason reason);

/// Size rule for the active set I.  The published choices are a fixed L
/// (L = K is the Gaussian-matrix recommendation) and L = max{K, 0.8 M}.
struct LRule {
  enum class Kind { fixed, max_of_k_and_fraction };
  Kind kind = Kind::max_of_k_and_fraction;
  Index fixed_l = 0;
  double fraction = 0.0;

  static LRule fixed(Index l) { return {Kind::fixed, l, 0.0}; }
  static LRule max_of_k_and(double fraction) {
    return {Kind::max_of_k_and_fraction, 0, fraction};
  }
  static LRule equal_k() { return max_of_k_and(0.0); }

  /// Resolves to a concrete L; throws unless K <= L < M.
  Index resolve(Index k, Index m) const;
};

struct RecoveryConfig {
  Index k = 0;
  LRule l_rule = LRule::equal_k();
  int max_iterations = 100;
  double residual_tol = 1e-8;  // relative to ||y||_2
  SolverOptions solver;
};

struct RecoveryResult {
  Vector c_hat;      // length N; zero outside `support`
  IndexSet support;  // the K selected columns
  int iterations = 0;
  double residual_norm = 0.0;  // ||y - phi * c_hat||_2, recomputed at exit
  HaltReason halt_reason = HaltReason::max_iterations;
  bool flagged = false;  // an ill-conditioned solve fell back to ridge
};

/// Partial Inversion.  Keeps an active set I of size L; on I the estimate is
/// the least-squares inversion Phi_I^dagger y (which cancels the intra-set
/// interference term (Phi_I* Phi_I - Id) c_I of the plain proxy), on the
/// complement it is the proxy Phi_J* r.  The L largest magnitudes of the
/// combined estimate form the next active set.  Halts on a small relative
/// residual of the combined estimate, on a repeated active set, or at the
/// iteration cap; the K largest entries are then re-solved and returned.
RecoveryResult partinv(const DenseMatrix& phi, const Vector& y,
                       const RecoveryConfig& config);

/// Baseline CoSaMP: merge the top-2K proxy indices with the current support,
/// least-squares on the merged set, prune to the K largest.
RecoveryResult cosamp(const DenseMatrix& phi, const Vector& y,
                      const RecoveryConfig& config);

/// l1 baseline: iterative soft-thresholding (FISTA steps) with a halving
/// continuation schedule on the shrinkage weight, then least-squares
/// debiasing on the K largest entries.  Stand-in for a basis-pursuit solver.
RecoveryResult l1_baseline(const DenseMatrix& phi, const Vector& y,
                           const RecoveryConfig& config);

/// Setwise scores s_j = sum_{l in I_j} |z_l|.
Vector tree_scores(const Vector& z, const SetPartition& partition);

/// Whole sets in decreasing score order until at least K coefficients are
/// covered.  Ties break toward the lower set index.
IndexSet select_tree_support(const Vector& scores, const SetPartition& partition,
                             Index k);

/// Tree-structured Partial Inversion: the active set is a union of whole
/// partition sets chosen by their scores instead of the top-L magnitudes.
RecoveryResult partinv_wavelet(const DenseMatrix& phi, const Vector& y, Index k,
                               const SetPartition& partition,
                               const RecoveryConfig& config);

struct EstimatorDecomposition {
  Vector partinv_noise;       // (Phi_I* Phi_I)^-1 Phi_I* Phi_~I c_~I
  Vector cosamp_self_noise;   // (Phi_I* Phi_I - Id) c_I
  Vector cosamp_cross_noise;  // Phi_I* Phi_~I c_~I
};

/// Diagnostic: the noise terms of the two estimators on a given active set.
/// Throws on rank-deficient Phi_I (no fallback here).
EstimatorDecomposition estimator_decomposition(const DenseMatrix& phi,
                                               const Vector& c_true,
                                               const IndexSet& active);

/// Indices of the `count` largest |v| entries; ties break toward the lower
/// index.  Returned sorted ascending.
IndexSet top_magnitude_indices(const Vector& v, Index count);

}  // namespace partinv
