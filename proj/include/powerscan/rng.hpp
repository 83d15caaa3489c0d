#pragma once

#include <cstdint>

namespace powerscan {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over the standard-library
// engines because its integer-only update and the explicit u64 -> double
// mapping below give the same stream on every platform, which the seeded
// experiment reproductions rely on.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as input to inverse transforms with poles at 0.
  double next_unit_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Multiply-shift; the modulo bias of the naive
  // approach is avoided without a rejection loop.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed for substream `stream` of `seed`.
inline std::uint64_t derive_stream_seed(std::uint64_t seed,
                                        std::uint64_t stream) {
  SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
  return mixer.next();
}

}  // namespace powerscan
