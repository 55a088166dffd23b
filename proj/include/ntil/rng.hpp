#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ntil {

// Deterministic 64-bit generator for all search randomness. std::mt19937_64
// has a standard-pinned output sequence, and the bounded draw and shuffle are
// implemented here so no implementation-defined distribution is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, k), unbiased via rejection. k must be positive.
  std::uint64_t bounded(std::uint64_t k) {
    const std::uint64_t threshold = (0 - k) % k;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % k;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[bounded(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ntil
