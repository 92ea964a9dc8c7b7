#pragma once

#include <cstdint>

namespace unipred {

// SplitMix64 (Steele, Lea and Flood 2014), unchanged constants. split() and
// stream() derive independent children deterministically, so parallel work
// never shares a generator.
class SplitMix64 {
 public:
  static constexpr const char* kName = "splitmix64/1";
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }
  SplitMix64 split() noexcept { return SplitMix64(next()); }
  // Child generator number `index` of `seed`; no generator state involved.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed + (index + 1) * kGamma) ^ seed);
  }

  std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace unipred
