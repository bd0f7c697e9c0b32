#pragma once

#include <cstdint>
#include <limits>

namespace plancomp {

// SplitMix64 (Steele, Lea & Flood). Each bootstrap sample gets its own stream
// derived from (seed, sample index), so results do not depend on how samples
// are spread over threads.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr const char* kName = "splitmix64-per-sample-stream";

  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed) ^ mix(index + 0x9e3779b97f4a7c15ULL));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform integer in [0, bound), unbiased by rejection.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    for (;;) {
      const std::uint64_t x = (*this)();
      if (x < limit) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace plancomp
