#ifndef HEMOPRIOR_STATS_RNG_H_
#define HEMOPRIOR_STATS_RNG_H_

#include <array>
#include <cstdint>

namespace hemoprior {

std::uint64_t SplitMix64(std::uint64_t& state);

// xoshiro256** (Blackman & Vigna). State is seeded from four SplitMix64
// outputs, so any 64-bit seed gives a valid non-zero state. Satisfies
// UniformRandomBitGenerator.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  // Unbiased integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);
  // Uniform double in [0, 1) from the top 53 bits.
  double Uniform();

 private:
  std::array<std::uint64_t, 4> s_{};
};

// Seed for an independent substream: SplitMix64 applied to the base seed
// mixed with the stream index and attempt counter. Serial and parallel
// callers derive identical streams for the same (seed, index, attempt).
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0);

}  // namespace hemoprior

#endif  // HEMOPRIOR_STATS_RNG_H_
