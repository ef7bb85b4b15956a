#include "partinv/linalg.hpp"

#include "partinv/rng.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace partinv {

DenseMatrix submatrix_columns(const DenseMatrix& a, const IndexSet& columns) {
  if (!columns.empty() && columns[columns.size() - 1] >= a.cols())
    throw std::invalid_argument("submatrix_columns: column index out of range");
  DenseMatrix out(a.rows(), columns.size());
  for (Index j = 0; j < columns.size(); ++j) out.col(j) = a.col(columns[j]);
  return out;
}

namespace {

bool all_finite(const Vector& v) { return v.allFinite(); }

LsqResult solve_direct(const DenseMatrix& a, const Vector& y) {
  const Index n = a.cols();
  DenseMatrix gram = a.transpose() * a;
  const Vector rhs = a.transpose() * y;

  Eigen::LLT<DenseMatrix> llt(gram);
  if (llt.info() == Eigen::Success) {
    Vector x = llt.solve(rhs);
    x += llt.solve(rhs - gram * x);  // one refinement step
    if (all_finite(x)) return {std::move(x), false};
  }

  // Ridge fallback for numerically singular normal equations.
  double ridge = 1e-10 * gram.trace() / static_cast<double>(n);
  if (!(ridge > 0.0)) ridge = 1e-10;
  gram.diagonal().array() += ridge;
  Eigen::LDLT<DenseMatrix> ldlt(gram);
  Vector x = ldlt.solve(rhs);
  x += ldlt.solve(rhs - gram * x);
  if (!all_finite(x)) x.setZero();
  return {std::move(x), true};
}

LsqResult solve_richardson(const DenseMatrix& a, const Vector& y,
                           const RichardsonOptions& opts) {
  const double omega =
      opts.omega > 0.0 ? opts.omega : 1.0 / gram_spectral_norm(a);

  Vector x = Vector::Zero(a.cols());
  Vector grad = a.transpose() * y;
  const double scale = grad.lpNorm<Eigen::Infinity>();
  if (scale == 0.0) return {std::move(x), false};

  Vector best_x = x;
  double best_norm = scale;
  double step = omega;
  for (int it = 0; it < opts.max_iter; ++it) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm <= opts.tol * scale) break;
    if (gnorm < best_norm) {
      best_norm = gnorm;
      best_x = x;
    } else if (gnorm > 4.0 * best_norm) {
      // diverging: back off the step and restart from the best iterate
      step *= 0.5;
      x = best_x;
    }
    x += step * grad;
    grad.noalias() = a.transpose() * (y - a * x);
  }
  if (grad.lpNorm<Eigen::Infinity>() > best_norm) x = best_x;
  return {std::move(x), false};
}

}  // namespace

LsqResult least_squares(const DenseMatrix& a, const Vector& y,
                        const SolverOptions& opts) {
  if (a.rows() != y.size())
    throw std::invalid_argument("least_squares: dimension mismatch");
  if (a.cols() == 0) return {Vector(0), false};
  if (opts.method == SolverMethod::direct) return solve_direct(a, y);
  return solve_richardson(a, y, opts.richardson);
}

DenseMatrix correlation_matrix(const DenseMatrix& phi) {
  return (phi.transpose() * phi).cwiseAbs();
}

double gram_spectral_norm(const DenseMatrix& a, int iterations) {
  const Index n = a.cols();
  if (n == 0) return 0.0;
  Rng rng(0x5DEECE66DULL);  // fixed: the estimate is part of deterministic runs
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  double vnorm = v.norm();
  if (vnorm == 0.0) {
    v.setOnes();
    vnorm = v.norm();
  }
  v /= vnorm;
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = a.transpose() * (a * v);
    lambda = v.dot(w);
    const double wnorm = w.norm();
    if (wnorm == 0.0) return 0.0;  // a == 0
    v = w / wnorm;
  }
  return lambda;
}

}  // namespace partinv
