#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index), so parallel sampling never depends on scheduling.

#include <cstdint>

namespace finsler::rng {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix64(key_ ^ mix64(index));
  }
  // Uniform on the open interval (0, 1).
  double open01(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
  }
  // Uniform on the open interval (lo, hi).
  double uniform(std::uint64_t index, double lo, double hi) const noexcept {
    return lo + (hi - lo) * open01(index);
  }
  CounterRng substream(std::uint64_t stream) const noexcept { return CounterRng(key_, stream + 1); }

 private:
  std::uint64_t key_;
};

// Default seed from FINSLER_SEED, else the given fallback.
std::uint64_t default_seed(std::uint64_t fallback = 1);

}  // namespace finsler::rng
