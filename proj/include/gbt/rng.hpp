#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "gbt/perm.hpp"

namespace gbt {

/// SplitMix64. state += 0x9E3779B97F4A7C15, then
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, bound) by multiply-shift; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Uniform random permutation (Fisher-Yates from the top).
inline Permutation random_permutation(std::size_t n, SplitMix64& rng) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(im[i - 1], im[rng.below(i)]);
  return Permutation(std::move(im));
}

/// k distinct points of {0..n-1}, ascending.
inline std::vector<Point> random_subset(std::size_t n, std::size_t k, SplitMix64& rng) {
  std::vector<Point> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Point>(i);
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace gbt
