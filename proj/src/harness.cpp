#include "partinv/harness.hpp"

#include "partinv/rng.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

namespace partinv {

const char* ensemble_id(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::gaussian: return "gaussian";
    case EnsembleKind::block: return "block";
    case EnsembleKind::wavelet: return "wavelet";
  }
  return "unknown";
}

std::vector<MethodSpec> default_methods(EnsembleKind kind) {
  if (kind == EnsembleKind::wavelet) {
    MethodSpec pw;
    pw.kind = MethodKind::partinv_wavelet;
    pw.id = "partinv-wavelet";
    return {pw};
  }
  MethodSpec pi;
  pi.kind = MethodKind::partinv;
  pi.id = "partinv";
  pi.l_rule = kind == EnsembleKind::block ? LRule::max_of_k_and(0.8)
                                          : LRule::equal_k();
  MethodSpec cs;
  cs.kind = MethodKind::cosamp;
  cs.id = "cosamp";
  MethodSpec l1;
  l1.kind = MethodKind::l1;
  l1.id = "l1";
  return {pi, cs, l1};
}

GridSpec GridSpec::paper_defaults(EnsembleKind kind) {
  GridSpec spec;
  if (kind == EnsembleKind::wavelet) {
    for (int s = 2; s <= 14; s += 2) spec.deltas.push_back(s / 16.0);
    for (int t = 1; t <= 10; ++t) spec.tree_counts.push_back(t);
    spec.trials = 100;
  } else {
    for (int i = 1; i <= 9; ++i) {
      spec.deltas.push_back(i / 10.0);
      spec.rhos.push_back(i / 10.0);
    }
    spec.trials = 25;
  }
  return spec;
}

Index GridSpec::row_count() const {
  return tree_counts.empty() ? static_cast<Index>(rhos.size())
                             : static_cast<Index>(tree_counts.size());
}

bool trial_success(const Vector& c_true, const Vector& c_hat) {
  const double err = (c_true - c_hat).squaredNorm() / static_cast<double>(c_true.size());
  return err < 1e-5;
}

namespace {

RecoveryConfig make_config(const MethodSpec& method, Index k) {
  RecoveryConfig config;
  config.k = k;
  config.l_rule = method.l_rule;
  config.max_iterations = method.max_iterations;
  config.residual_tol = method.residual_tol;
  config.solver = method.solver;
  return config;
}

RecoveryResult run_method(const MethodSpec& method, const SparseProblem& problem) {
  const RecoveryConfig config = make_config(method, problem.k);
  switch (method.kind) {
    case MethodKind::partinv:
      return partinv(problem.phi, problem.y, config);
    case MethodKind::cosamp:
      return cosamp(problem.phi, problem.y, config);
    case MethodKind::l1:
      return l1_baseline(problem.phi, problem.y, config);
    case MethodKind::partinv_wavelet:
      if (!problem.partition)
        throw std::invalid_argument("partinv-wavelet needs a partitioned ensemble");
      return partinv_wavelet(problem.phi, problem.y, problem.k, *problem.partition,
                             config);
  }
  throw std::invalid_argument("unknown method");
}

SparseProblem make_problem(const EnsembleSpec& ensemble, const CellRequest& cell,
                           std::uint64_t trial_seed,
                           const WaveletOperator* cached_op) {
  switch (ensemble.kind) {
    case EnsembleKind::gaussian: {
      const Index m = static_cast<Index>(std::lround(cell.delta * static_cast<double>(ensemble.n)));
      const Index k = static_cast<Index>(std::lround(cell.rho * static_cast<double>(m)));
      return gaussian_ensemble(m, ensemble.n, k, trial_seed);
    }
    case EnsembleKind::block: {
      const Index m = static_cast<Index>(std::lround(cell.delta * static_cast<double>(ensemble.n)));
      const Index k = static_cast<Index>(std::lround(cell.rho * static_cast<double>(m)));
      if (m > ensemble.n) throw std::invalid_argument("block: M > N");
      return block_correlated_ensemble(m, k, trial_seed, ensemble.n,
                                       ensemble.block_noise_stddev);
    }
    case EnsembleKind::wavelet: {
      const int sixteenths = static_cast<int>(std::lround(cell.delta * 16.0));
      WaveletOperator local;
      const WaveletOperator* op = cached_op;
      if (op == nullptr) {
        local = wavelet_tree_operator(pattern_for_sixteenths(sixteenths));
        op = &local;
      }
      const Index k = 21 * cell.tree_count;
      if (k >= op->phi.rows())
        throw std::invalid_argument("wavelet: K >= M");
      SparseProblem p;
      p.phi = op->phi;
      p.partition = op->partition;
      p.k = k;
      p.seed = trial_seed;
      p.c_true = tree_sparse_signal(op->partition, cell.tree_count, trial_seed);
      p.y = p.phi * p.c_true;
      return p;
    }
  }
  throw std::invalid_argument("unknown ensemble");
}

}  // namespace

CellResult run_cell(const EnsembleSpec& ensemble, const MethodSpec& method,
                    const CellRequest& cell, int trials, std::uint64_t base_seed,
                    const WaveletOperator* cached_op) {
  CellResult result;
  result.rho = cell.rho;
  if (ensemble.kind == EnsembleKind::wavelet) {
    // rho reported as realized K/M = 21*trees / (1024*delta)
    result.rho = 21.0 * cell.tree_count / (1024.0 * cell.delta);
  }
  const double cell_rho = result.rho;
  try {
    double total_ms = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(
          base_seed, {static_cast<std::uint64_t>(ensemble.kind),
                      static_cast<std::uint64_t>(cell.delta_index),
                      static_cast<std::uint64_t>(cell.rho_index),
                      static_cast<std::uint64_t>(t)});
      const SparseProblem problem = make_problem(ensemble, cell, trial_seed, cached_op);

      const auto start = std::chrono::steady_clock::now();
      const RecoveryResult recovered = run_method(method, problem);
      const auto stop = std::chrono::steady_clock::now();
      total_ms += std::chrono::duration<double, std::milli>(stop - start).count();

      result.trials += 1;
      if (trial_success(problem.c_true, recovered.c_hat)) result.successes += 1;
    }
    if (result.trials > 0) result.mean_runtime_ms = total_ms / result.trials;
  } catch (const std::invalid_argument&) {
    // infeasible (delta, rho) after rounding: record as skipped, not a crash
    result = CellResult{};
    result.skipped = true;
    result.rho = cell_rho;
  }
  return result;
}

std::vector<PhaseGrid> run_grid(const EnsembleSpec& ensemble,
                                const std::vector<MethodSpec>& methods,
                                const GridSpec& spec) {
  if (spec.deltas.empty() || spec.row_count() == 0)
    throw std::invalid_argument("run_grid: empty grid");

  const Index rows = spec.row_count();
  const Index deltas = static_cast<Index>(spec.deltas.size());

  // Wavelet operators depend only on the pattern; build each once.
  std::map<int, WaveletOperator> operators;
  if (ensemble.kind == EnsembleKind::wavelet) {
    for (double d : spec.deltas) {
      const int sixteenths = static_cast<int>(std::lround(d * 16.0));
      operators.emplace(sixteenths,
                        wavelet_tree_operator(pattern_for_sixteenths(sixteenths)));
    }
  }

  std::vector<PhaseGrid> grids;
  grids.reserve(methods.size());
  for (const auto& method : methods) {
    PhaseGrid grid;
    grid.ensemble = ensemble_id(ensemble.kind);
    grid.method = method.id;
    grid.delta_values = spec.deltas;
    grid.rho_values = spec.rhos;
    grid.tree_counts = spec.tree_counts;
    grid.trials_per_cell = spec.trials;
    grid.base_seed = spec.base_seed;
    grid.cells.assign(static_cast<std::size_t>(deltas),
                      std::vector<CellResult>(static_cast<std::size_t>(rows)));
    grids.push_back(std::move(grid));
  }

  struct Task {
    std::size_t method;
    Index delta_index;
    Index row_index;
  };
  std::vector<Task> tasks;
  for (std::size_t mi = 0; mi < methods.size(); ++mi)
    for (Index di = 0; di < deltas; ++di)
      for (Index ri = 0; ri < rows; ++ri) tasks.push_back({mi, di, ri});

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      CellRequest cell;
      cell.delta = spec.deltas[static_cast<std::size_t>(task.delta_index)];
      cell.delta_index = task.delta_index;
      cell.rho_index = task.row_index;
      if (ensemble.kind == EnsembleKind::wavelet) {
        cell.tree_count = spec.tree_counts[static_cast<std::size_t>(task.row_index)];
        cell.rho = static_cast<double>(cell.tree_count);
      } else {
        cell.rho = spec.rhos[static_cast<std::size_t>(task.row_index)];
      }
      const WaveletOperator* op = nullptr;
      if (ensemble.kind == EnsembleKind::wavelet)
        op = &operators.at(static_cast<int>(std::lround(cell.delta * 16.0)));
      grids[task.method].cells[static_cast<std::size_t>(task.delta_index)]
                        [static_cast<std::size_t>(task.row_index)] =
          run_cell(ensemble, methods[task.method], cell, spec.trials,
                   spec.base_seed, op);
    }
  };

  const int threads = std::max(1, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return grids;
}

}  // namespace partinv
