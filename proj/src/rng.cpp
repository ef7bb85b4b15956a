#include "partinv/rng.hpp"

#include <algorithm>

namespace partinv {

std::vector<Index> Rng::sample_without_replacement(Index n, Index k) {
  if (k < 0 || k > n)
    throw std::invalid_argument("sample_without_replacement: k out of range");
  // Partial Fisher-Yates over an explicit index pool.
  std::vector<Index> pool(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < k; ++i) {
    const Index j = i + static_cast<Index>(uniform_below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> components) {
  std::uint64_t h = splitmix64(base);
  for (std::uint64_t c : components) h = splitmix64(h ^ splitmix64(c));
  return h;
}

}  // namespace partinv
