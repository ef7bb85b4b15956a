#pragma once

#include "partinv/harness.hpp"
#include "partinv/types.hpp"

#include <string>
#include <vector>

namespace partinv {

/// CSV with header `delta,rho,method,trials,successes,mean_runtime_ms`, one
/// row per cell, rationals as %.4f.  Skipped cells carry trials = 0.  The
/// timing column is zeroed unless `include_timing` is set, so default output
/// is byte-identical across reruns with the same seed.
std::string grid_to_csv(const PhaseGrid& grid, bool include_timing = false);

/// Grayscale heatmap, success fraction 0 -> black, 1 -> white; delta on the
/// horizontal axis, rho (or tree count) increasing upward.  Skipped cells
/// are hatched red.
std::string grid_to_svg(const PhaseGrid& grid);

struct GridCsvRow {
  double delta = 0.0;
  double rho = 0.0;
  std::string method;
  int trials = 0;
  int successes = 0;
  double mean_runtime_ms = 0.0;
};

/// Parses grid_to_csv output (round-trip checked by tests).
std::vector<GridCsvRow> parse_grid_csv(const std::string& csv);

/// Row-major CSV, one matrix row per line, entries %.6e.
std::string matrix_to_csv(const DenseMatrix& m);

/// Grayscale heatmap of |entries|: 0 -> white, the max entry -> black.
/// Equal-valued runs are merged, which keeps correlation matrices compact.
std::string matrix_heatmap_svg(const DenseMatrix& m);

}  // namespace partinv
