#pragma once

#include <array>
#include <cstdint>

namespace transport {

// Deterministic random source: xoshiro256++ seeded through SplitMix64.
// Both algorithms are fixed and integer-only, so a given seed produces the
// same sequence on every platform. Substreams are derived by hashing
// (seed, index) with the SplitMix64 finalizer; the finalizer is a bijection,
// so distinct indices always map to distinct substream seeds.
//
// A RandomSource instance is single-owner: never share one across threads.
// Parallel work takes one substream per unit of work instead.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();
  // Uniform on [0,1), 53-bit mantissa: (next_u64() >> 11) * 2^-53.
  double next_double();
  RandomSource substream(std::uint64_t index) const;

private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
};

// SplitMix64 finalizer, exposed because substream derivation and the seeding
// path are part of the reproducibility contract.
std::uint64_t splitmix64_next(std::uint64_t& state);

}  // namespace transport
