#pragma once

#include <cstdint>
#include <string_view>

namespace saa {

// Fixed generator for every randomized experiment in the repo. splitmix64
// (Vigna's reference implementation): state advances by the golden-gamma
// increment, so jumping ahead j steps is state + j*gamma. That makes
// partitioned runs bit-identical to a single stream.
inline constexpr std::string_view rng_algorithm_id = "splitmix64";

struct RngSpec {
  uint64_t seed = 0;
};

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  explicit SplitMix64(RngSpec spec) : state_(spec.seed) {}

  static constexpr uint64_t gamma = 0x9E3779B97F4A7C15ull;

  uint64_t next() {
    state_ += gamma;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, 2^bits), bits in 1..64.
  uint64_t next_bits(int bits) { return next() >> (64 - bits); }

  // Generator positioned as if `steps` calls to next() had been made.
  static SplitMix64 jump(RngSpec spec, uint64_t steps) {
    return SplitMix64(spec.seed + steps * gamma);
  }

 private:
  uint64_t state_;
};

}  // namespace saa
