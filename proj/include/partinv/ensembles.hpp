#pragma once

#include "partinv/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace partinv {

/// One trial instance: sensing matrix, measurements, ground truth.
struct SparseProblem {
  DenseMatrix phi;  // M x N
  Vector y;         // length M, = phi * c_true (noise, when any, lives in phi)
  Vector c_true;    // length N, exactly k nonzeros
  Index k = 0;
  std::optional<SetPartition> partition;
  std::uint64_t seed = 0;
};

/// 4x4 binary subsampling mask; tiled 8x8 it selects rows of a 32x32 patch.
struct SamplingPattern {
  std::array<std::uint8_t, 16> mask{};  // row-major: mask[r*4+c]

  int ones() const {
    int s = 0;
    for (auto b : mask) s += b;
    return s;
  }
  double delta() const { return ones() / 16.0; }
};

/// The seven published patterns, delta = 2/16 .. 14/16 in steps of 2/16.
const std::array<SamplingPattern, 7>& table_patterns();

/// Pattern whose nominal rate is `sixteenths`/16; throws if not tabulated.
const SamplingPattern& pattern_for_sixteenths(int sixteenths);

/// M x N matrix of i.i.d. N(0,1) entries, columns scaled to unit l2 norm;
/// k-sparse coefficients with uniform support and N(0,1) values; y exact.
SparseProblem gaussian_ensemble(Index m, Index n, Index k, std::uint64_t seed);

/// Block-diagonal 0/1 skeleton over 16 column subsets (rows split evenly,
/// first m mod 16 subsets get one extra), plus i.i.d. N(0, noise_stddev^2)
/// on every entry, columns normalized.  Support: 4 subsets at random with
/// floor(k/4) nonzeros each, leftovers in a fifth subset.
SparseProblem block_correlated_ensemble(Index m, Index k, std::uint64_t seed,
                                        Index n = 256,
                                        double noise_stddev = 0.05);

/// Phi = SH * Psi for the 1D demonstration: Psi = orthonormal Haar basis,
/// SH = (n/decimation) x n rows of the kernel shifted by `decimation` with
/// circular wraparound.  Kernel length must be odd.
DenseMatrix haar_filter_operator(
    Index n = 256, const std::vector<double>& kernel = {0.1, 0.2, 0.4, 0.2, 0.1},
    Index decimation = 2);

struct WaveletOperator {
  DenseMatrix phi;         // M x 1024, M = 64 * pattern.ones()
  SetPartition partition;  // 49 sets: 16 + 48 * 21
};

/// Phi = S * H * Psi on 32x32 patches: Psi = 2D Daubechies(5 moments) basis,
/// 5 levels, periodic; H = circular 5x5 blur (blur_center at the middle,
/// blur_off elsewhere, deliberately unnormalized); S keeps the pixels where
/// the tiled pattern is 1, in column-major pixel order.  Columns are used
/// as-is (no renormalization).
WaveletOperator wavelet_tree_operator(const SamplingPattern& pattern,
                                      double blur_center = 0.29,
                                      double blur_off = 0.02);

/// Coefficient vector supported on `tree_count` quadtrees picked uniformly
/// from the partition's sets 1..48, values i.i.d. N(0,1); K = 21*tree_count.
Vector tree_sparse_signal(const SetPartition& partition, Index tree_count,
                          std::uint64_t seed);

}  // namespace partinv
