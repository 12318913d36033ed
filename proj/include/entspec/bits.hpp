#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace entspec {

using Mask = std::uint32_t;

inline constexpr int popcount(Mask m) { return std::popcount(m); }

inline constexpr Mask low_bits(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Order-preserving bit deposit: bit j of `value` goes to the position of the
// j-th set bit of `mask`.
inline constexpr std::uint64_t deposit_bits(std::uint64_t value, Mask mask) {
  std::uint64_t out = 0;
  for (int j = 0; mask != 0; ++j) {
    const Mask lowest = mask & (~mask + 1);
    if ((value >> j) & 1u) out |= lowest;
    mask &= mask - 1;
  }
  return out;
}

// Inverse of deposit_bits: gathers the bits of `value` at the set positions of
// `mask` into a compact integer.
inline constexpr std::uint64_t extract_bits(std::uint64_t value, Mask mask) {
  std::uint64_t out = 0;
  for (int j = 0; mask != 0; ++j) {
    const Mask lowest = mask & (~mask + 1);
    if (value & lowest) out |= std::uint64_t{1} << j;
    mask &= mask - 1;
  }
  return out;
}

// All submasks of `mask` in ascending order; entry j equals deposit_bits(j, mask).
inline std::vector<std::uint64_t> submask_offsets(Mask mask) {
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << popcount(mask));
  Mask s = 0;
  do {
    out.push_back(s);
    s = (s - mask) & mask;
  } while (s != 0);
  return out;
}

inline constexpr std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace entspec
