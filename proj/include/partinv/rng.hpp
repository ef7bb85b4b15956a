#pragma once

#include "partinv/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace partinv {

/// Deterministic random source: mt19937_64 for bits, explicit Box-Muller for
/// normals.  std::normal_distribution is implementation-defined, so it is
/// avoided; every draw here is a fixed function of the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1), 53 bits.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; draws come in cached pairs.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform integer in [0, n), rejection-sampled (unbiased).
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  /// k distinct values from {0..n-1}, returned sorted ascending.
  std::vector<Index> sample_without_replacement(Index n, Index k);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stable seed derivation (splitmix64 chaining).  Grid trials use
/// derive_seed(base, ensemble id, delta index, rho index, trial index) so a
/// cell's trials never depend on any other cell.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> components);

}  // namespace partinv
