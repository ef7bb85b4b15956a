#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace partinv {

// All matrices in this library are dense, double precision, column-major
// (Eigen's default storage).  Success thresholds sit at the 1e-5 scale, so
// single precision is never used.
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Strictly increasing column indices.  The container sorts on construction
/// and rejects duplicates and negative entries.
class IndexSet {
 public:
  IndexSet() = default;

  explicit IndexSet(std::vector<Index> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (idx_[i] < 0) throw std::invalid_argument("IndexSet: negative index");
      if (i > 0 && idx_[i] == idx_[i - 1])
        throw std::invalid_argument("IndexSet: duplicate index");
    }
  }

  /// {0, 1, ..., n-1}
  static IndexSet full(Index n) {
    std::vector<Index> v(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    return IndexSet(std::move(v));
  }

  Index size() const { return static_cast<Index>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  Index operator[](Index i) const { return idx_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& indices() const { return idx_; }

  bool contains(Index v) const {
    return std::binary_search(idx_.begin(), idx_.end(), v);
  }

  /// {0..n-1} \ this.  Every member must already lie in [0, n).
  IndexSet complement(Index n) const {
    if (!idx_.empty() && idx_.back() >= n)
      throw std::invalid_argument("IndexSet::complement: index out of range");
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(n) - idx_.size());
    std::size_t p = 0;
    for (Index i = 0; i < n; ++i) {
      if (p < idx_.size() && idx_[p] == i) {
        ++p;
      } else {
        out.push_back(i);
      }
    }
    IndexSet c;
    c.idx_ = std::move(out);  // already sorted and unique
    return c;
  }

  bool operator==(const IndexSet& other) const = default;

  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

 private:
  std::vector<Index> idx_;
};

/// Disjoint cover of {0..total-1} by column subsets (correlated blocks or
/// wavelet trees).
struct SetPartition {
  std::vector<IndexSet> sets;
  Index total = 0;

  Index set_count() const { return static_cast<Index>(sets.size()); }

  /// Throws unless the sets are pairwise disjoint and cover {0..total-1}.
  void validate() const {
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    for (const auto& s : sets) {
      for (Index i : s) {
        if (i >= total) throw std::invalid_argument("SetPartition: index out of range");
        if (seen[static_cast<std::size_t>(i)])
          throw std::invalid_argument("SetPartition: overlapping sets");
        seen[static_cast<std::size_t>(i)] = 1;
      }
    }
    for (char c : seen)
      if (!c) throw std::invalid_argument("SetPartition: incomplete cover");
  }
};

}  // namespace partinv
