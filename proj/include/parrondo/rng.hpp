#ifndef PARRONDO_RNG_HPP
#define PARRONDO_RNG_HPP

#include <cstdint>

namespace parrondo {

/// SplitMix64 (Vigna, 2015). The output sequence for a given seed is part of
/// the published algorithm and never changes across releases or platforms,
/// which keeps golden simulation outputs stable.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  /// Independent derived stream: the seed and stream index are finalized
  /// separately and xored, so streams never collide for distinct indices in
  /// practice. stream(seed, 0) is distinct from SplitMix64(seed).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(finalize(seed) ^ finalize(~index));
  }

 private:
  static std::uint64_t finalize(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace parrondo

#endif  // PARRONDO_RNG_HPP
