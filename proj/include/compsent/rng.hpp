#pragma once

// Seeded pseudo-random generator used for every randomized decision in the
// library (splits, folds, sampling, corpus synthesis). The algorithm is
// SplitMix64 (Steele/Lea/Flood), fixed here so that the same seed yields
// the same sequence on every platform and standard library.

#include <cstdint>
#include <utility>
#include <vector>

namespace compsent {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t reject = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = next();
      if (x >= reject) return x % n;
    }
  }

  double unit() {  // [0, 1) with 53 random bits
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Derive an independent stream; used to keep sub-tasks decoupled from
  // the order in which the parent consumes randomness.
  Rng fork(std::uint64_t salt) {
    return Rng(next() ^ (salt * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
  }

 private:
  std::uint64_t state_;
};

// Fisher-Yates with the fixed generator above.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace compsent
