// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Seeded randomness. All draws go through Rng so that results depend only
// on the seed and not on the standard library's distribution classes,
// whose algorithms are implementation-defined.

#ifndef DAMFORGE_RANDOM_HPP_
#define DAMFORGE_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace damforge {

// 64-bit FNV-1a over the bytes of `text`, mixed with `seed`.
std::uint64_t stable_hash(std::string_view text, std::uint64_t seed = 0);

// Derives the seed of a named substream ("split", "pairs", "placement",
// "probes", ...) from the root seed.
std::uint64_t substream_seed(std::uint64_t root_seed, std::string_view name);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  // Uniform double in [0, 1).
  double uniform_real();

  // Standard normal draw (Box-Muller).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform_index(i)]);
    }
  }

  // `k` distinct indices from [0, n), in draw order. Requires k <= n.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace damforge

#endif  // DAMFORGE_RANDOM_HPP_
