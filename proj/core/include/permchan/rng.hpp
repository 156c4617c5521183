#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace permchan {

// splitmix64 finalizer; used for seed expansion and stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ with explicit sampling routines. Everything here is fully
// specified so that a (seed, draw sequence) pair produces the same values on
// every platform; simulation reproducibility depends on it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t z = seed;
    for (auto& word : state_) {
      z = mix64(z);
      word = z;
    }
  }

  // Independent stream keyed by (master, a, b). Streams for distinct keys are
  // decorrelated by the mixing; concurrent tasks each derive their own.
  static Rng derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t s = mix64(master ^ 0x243f6a8885a308d3ULL);
    s = mix64(s ^ mix64(a));
    s = mix64(s ^ mix64(b));
    return Rng(s);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on {0,...,bound-1}, unbiased (rejection on the top range).
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Index of the first cumulative weight exceeding a uniform draw.
  int sample_cumulative(std::span<const double> cumulative) noexcept {
    const double u = next_double();
    const int n = static_cast<int>(cumulative.size());
    for (int i = 0; i < n - 1; ++i) {
      if (u < cumulative[i]) return i;
    }
    return n - 1;
  }

  // Fisher-Yates; uniform over all permutations.
  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::uint64_t i = v.size(); i > 1; --i) {
      const std::uint64_t j = next_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace permchan
