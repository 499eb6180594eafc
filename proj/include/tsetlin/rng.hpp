#pragma once

#include <cstdint>

namespace tsetlin {

// xoshiro256** 1.0 (Blackman & Vigna, public domain), seeded by expanding a
// 64-bit seed with splitmix64. All randomness in this project flows through
// this generator so that results are reproducible across platforms and
// independent of the C++ standard library's distribution implementations.
//
// Stream discipline: every consumer documents the exact order in which it
// draws from the stream. Changing a draw order is a breaking change for
// model reproducibility.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    // splitmix64 expansion
    std::uint64_t x = seed;
    for (auto& w : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // One draw per call, regardless of p.
  bool bernoulli(double p) { return next() < threshold(p); }

  // Fixed-point threshold for repeated Bernoulli(p) trials: draw() < thr.
  // p >= 1 maps to "always", p <= 0 to "never".
  static std::uint64_t threshold(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return ~0ULL;
    return static_cast<std::uint64_t>(p * 0x1.0p64);
  }

  // Unbiased integer in [0, n) via rejection (Lemire). One draw in the
  // common case.
  std::uint32_t below(std::uint32_t n) {
    std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(next())) * n;
    auto lo = static_cast<std::uint32_t>(m);
    if (lo < n) {
      const std::uint32_t t = (0u - n) % n;
      while (lo < t) {
        m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(next())) * n;
        lo = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  // Fisher-Yates; std::shuffle is implementation-defined, this is not.
  template <typename T>
  void shuffle(T* data, std::size_t n) {
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::uint32_t j = below(static_cast<std::uint32_t>(i + 1));
      T tmp = data[i];
      data[i] = data[j];
      data[j] = tmp;
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace tsetlin
