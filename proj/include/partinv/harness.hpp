#pragma once

#include "partinv/ensembles.hpp"
#include "partinv/recovery.hpp"
#include "partinv/types.hpp"

#include <string>
#include <vector>

namespace partinv {

enum class EnsembleKind { gaussian, block, wavelet };

const char* ensemble_id(EnsembleKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::gaussian;
  Index n = 256;  // gaussian/block signal length; the wavelet patch is fixed 32x32
  double block_noise_stddev = 0.05;  // variance 0.0025
};

enum class MethodKind { partinv, cosamp, l1, partinv_wavelet };

struct MethodSpec {
  MethodKind kind = MethodKind::partinv;
  std::string id = "partinv";  // CSV method column and output file stem
  LRule l_rule = LRule::equal_k();
  int max_iterations = 100;
  double residual_tol = 1e-8;
  SolverOptions solver;
};

/// Default method lineup per ensemble: gaussian runs partinv (L=K), cosamp
/// and l1; block runs the same with L = max{K, 0.8 M}; wavelet runs the
/// tree-scored variant.
std::vector<MethodSpec> default_methods(EnsembleKind kind);

struct GridSpec {
  std::vector<double> deltas;     // M/N
  std::vector<double> rhos;       // K/M rows (gaussian/block)
  std::vector<int> tree_counts;   // rows for the wavelet ensemble
  int trials = 25;
  std::uint64_t base_seed = 1;
  int threads = 1;

  static GridSpec paper_defaults(EnsembleKind kind);
  Index row_count() const;
};

struct CellResult {
  bool skipped = false;  // infeasible (delta, rho) after rounding
  int trials = 0;
  int successes = 0;
  double mean_runtime_ms = 0.0;
  double rho = 0.0;  // value reported in the CSV (21*trees/M for wavelet)
};

struct PhaseGrid {
  std::string ensemble;
  std::string method;
  std::vector<double> delta_values;
  std::vector<double> rho_values;
  std::vector<int> tree_counts;  // non-empty only for the wavelet ensemble
  int trials_per_cell = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::vector<CellResult>> cells;  // [delta index][row index]
};

struct CellRequest {
  double delta = 0.0;
  Index delta_index = 0;
  double rho = 0.0;  // ignored for wavelet
  Index rho_index = 0;
  int tree_count = 0;  // wavelet rows
};

/// Success criterion: (1/N) ||c - c_hat||^2 < 1e-5.
bool trial_success(const Vector& c_true, const Vector& c_hat);

/// One grid cell: `trials` seeded instances, per-trial seed derived from
/// (base_seed, ensemble id, delta index, row index, trial index).  Infeasible
/// cells come back skipped.  `cached_op` may carry a prebuilt wavelet
/// operator for the cell's pattern; pass nullptr to build it locally.
CellResult run_cell(const EnsembleSpec& ensemble, const MethodSpec& method,
                    const CellRequest& cell, int trials, std::uint64_t base_seed,
                    const WaveletOperator* cached_op = nullptr);

/// One PhaseGrid per method; cells are independent and may run on
/// `spec.threads` workers, output identical regardless of schedule.
std::vector<PhaseGrid> run_grid(const EnsembleSpec& ensemble,
                                const std::vector<MethodSpec>& methods,
                                const GridSpec& spec);

}  // namespace partinv
