#pragma once

#include <cstdint>
#include <random>

namespace entspec {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used as a counter-based hash
// to derive independent per-sample seeds.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed of the stream for sample `index` under master `seed`. Depends only on
// the pair, so serial and parallel sampling draw identical states.
inline constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ull));
}

using SampleEngine = std::mt19937_64;

inline SampleEngine make_sample_engine(std::uint64_t seed, std::uint64_t index) {
  return SampleEngine{stream_seed(seed, index)};
}

}  // namespace entspec
