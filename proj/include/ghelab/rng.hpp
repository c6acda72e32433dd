#pragma once

#include <array>
#include <cstdint>

#include "ghelab/errors.hpp"

namespace ghelab {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

/// Deterministic random stream (xoshiro256++ seeded through splitmix64).
///
/// Everything that consumes randomness in this library takes an explicit
/// Rng so that experiments are reproducible and trials can run in
/// parallel without shared state. Per-trial streams come from
/// Rng::derive(master_seed, trial_index), a fixed hash of both values.
/// All draws are implemented here rather than with <random> distributions,
/// whose output is not pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = detail::splitmix64(s);
  }

  /// Independent stream for one trial of a seeded experiment.
  static Rng derive(std::uint64_t master_seed, std::uint64_t stream_index) {
    std::uint64_t s = master_seed;
    std::uint64_t h = detail::splitmix64(s);
    s = h ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1));
    return Rng(detail::splitmix64(s));
  }

  std::uint64_t next() {
    const std::uint64_t result =
        detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  /// Unbiased draw from [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
    if (bound == 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// True with probability p. Exact for p a multiple of 2^-53.
  bool bernoulli(double p) { return real() < p; }

  int coin() { return static_cast<int>(next() >> 63); }

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ghelab
