#include "partinv/ensembles.hpp"

#include "partinv/rng.hpp"
#include "partinv/wavelet.hpp"

#include <algorithm>
#include <cmath>

namespace partinv {

namespace {

// Table 1 (a)-(g), row-major.
constexpr std::array<std::array<std::uint8_t, 16>, 7> kTableMasks = {{
    {0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},  // 2/16
    {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1},  // 4/16
    {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0},  // 6/16
    {1, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 1},  // 8/16
    {0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1},  // 10/16
    {1, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 0, 1, 0, 1, 1},  // 12/16
    {1, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1},  // 14/16
}};

void normalize_columns(DenseMatrix& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    const double norm = m.col(c).norm();
    if (norm > 0.0) m.col(c) /= norm;
  }
}

}  // namespace

const std::array<SamplingPattern, 7>& table_patterns() {
  static const std::array<SamplingPattern, 7> patterns = [] {
    std::array<SamplingPattern, 7> p{};
    for (std::size_t i = 0; i < 7; ++i) p[i].mask = kTableMasks[i];
    return p;
  }();
  return patterns;
}

const SamplingPattern& pattern_for_sixteenths(int sixteenths) {
  if (sixteenths < 2 || sixteenths > 14 || sixteenths % 2 != 0)
    throw std::invalid_argument(
        "pattern_for_sixteenths: tabulated rates are 2/16..14/16 in steps of 2");
  return table_patterns()[static_cast<std::size_t>(sixteenths / 2 - 1)];
}

SparseProblem gaussian_ensemble(Index m, Index n, Index k, std::uint64_t seed) {
  if (!(0 < k && k < m && m <= n))
    throw std::invalid_argument("gaussian_ensemble: need 0 < K < M <= N");
  Rng rng(seed);

  SparseProblem p;
  p.k = k;
  p.seed = seed;
  p.phi.resize(m, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < m; ++r) p.phi(r, c) = rng.normal();
  normalize_columns(p.phi);

  p.c_true = Vector::Zero(n);
  for (Index idx : rng.sample_without_replacement(n, k))
    p.c_true[idx] = rng.normal();
  p.y = p.phi * p.c_true;
  return p;
}

SparseProblem block_correlated_ensemble(Index m, Index k, std::uint64_t seed,
                                        Index n, double noise_stddev) {
  constexpr Index kSubsets = 16;
  if (n % kSubsets != 0)
    throw std::invalid_argument("block_correlated_ensemble: N must be divisible by 16");
  const Index cols_per_subset = n / kSubsets;
  if (!(0 < k && k < m))
    throw std::invalid_argument("block_correlated_ensemble: need 0 < K < M");
  const Index per_subset = k / 4;
  const Index leftover = k - 4 * per_subset;
  if (per_subset > cols_per_subset || leftover > cols_per_subset)
    throw std::invalid_argument(
        "block_correlated_ensemble: K/4 exceeds subset size");

  Rng rng(seed);
  SparseProblem p;
  p.k = k;
  p.seed = seed;

  // Rows split as evenly as possible: the first m mod 16 subsets get one extra.
  std::array<Index, kSubsets> row_begin{};
  Index row = 0;
  for (Index b = 0; b < kSubsets; ++b) {
    row_begin[static_cast<std::size_t>(b)] = row;
    row += m / kSubsets + (b < m % kSubsets ? 1 : 0);
  }

  p.phi = DenseMatrix::Zero(m, n);
  for (Index b = 0; b < kSubsets; ++b) {
    const Index r0 = row_begin[static_cast<std::size_t>(b)];
    const Index r1 = (b + 1 < kSubsets) ? row_begin[static_cast<std::size_t>(b + 1)] : m;
    p.phi.block(r0, b * cols_per_subset, r1 - r0, cols_per_subset).setOnes();
  }
  if (noise_stddev > 0.0) {
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < m; ++r) p.phi(r, c) += noise_stddev * rng.normal();
  }
  normalize_columns(p.phi);

  SetPartition partition;
  partition.total = n;
  for (Index b = 0; b < kSubsets; ++b) {
    std::vector<Index> cols(static_cast<std::size_t>(cols_per_subset));
    for (Index j = 0; j < cols_per_subset; ++j)
      cols[static_cast<std::size_t>(j)] = b * cols_per_subset + j;
    partition.sets.emplace_back(std::move(cols));
  }
  p.partition = std::move(partition);

  // 4 active subsets; leftover nonzeros go in a fifth distinct subset.
  const std::vector<Index> active = rng.sample_without_replacement(kSubsets, 4);
  std::vector<Index> support;
  for (Index b : active) {
    for (Index j : rng.sample_without_replacement(cols_per_subset, per_subset))
      support.push_back(b * cols_per_subset + j);
  }
  if (leftover > 0) {
    std::vector<Index> rest;
    for (Index b = 0; b < kSubsets; ++b)
      if (std::find(active.begin(), active.end(), b) == active.end())
        rest.push_back(b);
    const Index fifth = rest[rng.uniform_below(rest.size())];
    for (Index j : rng.sample_without_replacement(cols_per_subset, leftover))
      support.push_back(fifth * cols_per_subset + j);
  }
  std::sort(support.begin(), support.end());

  p.c_true = Vector::Zero(n);
  for (Index idx : support) p.c_true[idx] = rng.normal();
  p.y = p.phi * p.c_true;
  return p;
}

DenseMatrix haar_filter_operator(Index n, const std::vector<double>& kernel,
                                 Index decimation) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("haar_filter_operator: N must be a power of two");
  if (kernel.empty() || kernel.size() % 2 == 0)
    throw std::invalid_argument("haar_filter_operator: kernel length must be odd");
  const DenseMatrix psi = wavelet::haar_basis(n);
  const Index rows = n / decimation;
  const Index half = static_cast<Index>(kernel.size()) / 2;

  DenseMatrix sh = DenseMatrix::Zero(rows, n);
  for (Index r = 0; r < rows; ++r) {
    for (Index t = 0; t < static_cast<Index>(kernel.size()); ++t) {
      const Index c = ((decimation * r + t - half) % n + n) % n;
      sh(r, c) += kernel[static_cast<std::size_t>(t)];
    }
  }
  return sh * psi;
}

WaveletOperator wavelet_tree_operator(const SamplingPattern& pattern,
                                      double blur_center, double blur_off) {
  constexpr Index kSide = 32;
  constexpr Index kN = kSide * kSide;

  // 32x32 mask by 8x8 tiling of the 4x4 pattern; rows selected in
  // column-major pixel order.
  std::vector<Index> selected;
  for (Index c = 0; c < kSide; ++c)
    for (Index r = 0; r < kSide; ++r)
      if (pattern.mask[static_cast<std::size_t>((r % 4) * 4 + (c % 4))])
        selected.push_back(c * kSide + r);
  const Index m = static_cast<Index>(selected.size());
  if (m == 0) throw std::invalid_argument("wavelet_tree_operator: empty pattern");

  WaveletOperator op;
  op.partition = wavelet::quadtree_partition_32();
  op.phi.resize(m, kN);

  DenseMatrix coeff = DenseMatrix::Zero(kSide, kSide);
  DenseMatrix blurred(kSide, kSide);
  for (Index cc = 0; cc < kSide; ++cc) {
    for (Index cr = 0; cr < kSide; ++cr) {
      coeff(cr, cc) = 1.0;
      const DenseMatrix img = wavelet::idwt2(coeff, 5);
      coeff(cr, cc) = 0.0;
      // circular 5x5 blur
      for (Index r = 0; r < kSide; ++r) {
        for (Index c = 0; c < kSide; ++c) {
          double acc = 0.0;
          for (Index dr = -2; dr <= 2; ++dr)
            for (Index dc = -2; dc <= 2; ++dc)
              acc += (dr == 0 && dc == 0 ? blur_center : blur_off) *
                     img((r + dr + kSide) % kSide, (c + dc + kSide) % kSide);
          blurred(r, c) = acc;
        }
      }
      const Index col = cc * kSide + cr;
      for (Index i = 0; i < m; ++i) {
        const Index pix = selected[static_cast<std::size_t>(i)];
        op.phi(i, col) = blurred(pix % kSide, pix / kSide);
      }
    }
  }
  return op;
}

Vector tree_sparse_signal(const SetPartition& partition, Index tree_count,
                          std::uint64_t seed) {
  const Index selectable = partition.set_count() - 1;  // sets 1..SETNUM-1
  if (tree_count < 1 || tree_count > selectable)
    throw std::invalid_argument("tree_sparse_signal: tree_count out of range");
  Rng rng(seed);
  Vector c = Vector::Zero(partition.total);
  for (Index s : rng.sample_without_replacement(selectable, tree_count)) {
    for (Index idx : partition.sets[static_cast<std::size_t>(s + 1)])
      c[idx] = rng.normal();
  }
  return c;
}

}  // namespace partinv
