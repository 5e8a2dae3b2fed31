#pragma once

#include <cstdint>

namespace fw {

// Counter-based generator: the k-th draw is a pure function of (seed, k),
// so streams can be split across workers and replayed bit-exactly in any
// order. Output function is the SplitMix64 finalizer applied to the state
// seed + k * 0x9E3779B97F4A7C15 (Weyl sequence with the golden-ratio
// increment). Reproducibility of every Monte-Carlo result in this project
// reduces to this function.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t word(std::uint64_t counter) const {
    std::uint64_t z = seed_ + counter * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace fw
