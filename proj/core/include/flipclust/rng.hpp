#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace flipclust {

// All randomness in this project flows through splitmix64. It is a
// counter-based generator: output k is a fixed avalanche of seed + (k+1)*gamma,
// so a (seed) pair identifies a reproducible stream on any platform.
// Run manifests record the generator id below.
inline constexpr const char* kGeneratorId = "splitmix64";
inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t avalanche64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += kSplitMix64Gamma;
    return avalanche64(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and two indices.
/// Documented so that trial streams can be reproduced without coordination:
/// each argument is folded in through the splitmix64 avalanche.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b) {
  std::uint64_t x = avalanche64(base + kSplitMix64Gamma);
  x = avalanche64(x ^ (a + kSplitMix64Gamma));
  return avalanche64(x ^ (b + 2 * kSplitMix64Gamma));
}

/// Visits every index in [0, count) independently with probability p, in
/// ascending order, via geometric skips. Expected cost O(p * count + 1).
template <typename Visit>
void sample_bernoulli_indices(std::uint64_t count, double p, SplitMix64& rng,
                              Visit&& visit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) visit(i);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t index = 0;
  while (index < count) {
    const double u = rng.next_unit();
    // Failures before the next success; u < 1 keeps the log finite.
    const double skip = std::floor(std::log1p(-u) / log_q);
    if (skip >= static_cast<double>(count - index)) return;
    index += static_cast<std::uint64_t>(skip);
    visit(index);
    ++index;
  }
}

}  // namespace flipclust
