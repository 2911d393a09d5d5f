// Counter-based pseudo-random streams.
//
// Every random quantity in this library is drawn from a substream addressed
// by (seed, index), so a result is reproducible no matter in which order --
// or on how many threads -- the draws are evaluated.

#pragma once

#include <cstdint>

namespace unionbound::rng {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Maps a 64-bit word to a double in [0, 1) using the top 53 bits.
inline constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// A sequential generator addressed by (seed, index).  Draws within one
// stream are ordered; distinct (seed, index) pairs give unrelated streams.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index)
      : state_(mix(mix(seed + kGamma) ^ (index * kGamma + 1))) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix(state_);
  }

  double next_unit() { return to_unit(next_u64()); }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_unit_open0() { return 1.0 - next_unit(); }

 private:
  std::uint64_t state_;
};

// Single draw from substream (seed, index).
inline double unit(std::uint64_t seed, std::uint64_t index) {
  return Stream(seed, index).next_unit();
}

// Derives a child seed, e.g. one seed per Monte Carlo trial.
inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index) {
  return Stream(seed, index).next_u64();
}

}  // namespace unionbound::rng
