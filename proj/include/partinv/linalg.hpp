#pragma once

#include "partinv/types.hpp"

namespace partinv {

enum class SolverMethod { direct, richardson };

struct RichardsonOptions {
  double omega = 0.0;  // step size; 0 selects 1/sigma_max^2 via power method
  int max_iter = 500;
  double tol = 1e-10;  // on ||A*(y - Ax)||_inf relative to ||A*y||_inf
};

struct SolverOptions {
  SolverMethod method = SolverMethod::direct;
  RichardsonOptions richardson;
};

struct LsqResult {
  Vector x;
  bool flagged = false;  // true when the ridge fallback was taken
};

/// Columns of A selected by I, in I's order.  Throws on out-of-range indices.
DenseMatrix submatrix_columns(const DenseMatrix& a, const IndexSet& columns);

/// Minimize ||Ax - y||_2.
///
/// direct: normal equations + Cholesky with one refinement step.  If the
/// factorization fails (rank-deficient A, including cols > rows), the solve
/// is retried with a ridge term 1e-10 * trace(A*A)/cols and the result is
/// flagged rather than throwing.
/// richardson: x <- x + omega * A*(y - Ax), started at zero.
LsqResult least_squares(const DenseMatrix& a, const Vector& y,
                        const SolverOptions& opts = {});

/// C_ij = |<phi_i, phi_j>|; symmetric N x N.
DenseMatrix correlation_matrix(const DenseMatrix& phi);

/// Largest eigenvalue of A*A (= sigma_max(A)^2), estimated with a fixed
/// deterministic power iteration.
double gram_spectral_norm(const DenseMatrix& a, int iterations = 50);

}  // namespace partinv
