#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace levy_smile {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// xoshiro256** on an independent substream per path. Stream derivation:
// the state of substream p under `seed` is splitmix64(seed + (4p + j) * golden)
// for j = 0..3, so streams are a pure function of (seed, p) and never overlap
// in the underlying splitmix sequence.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t stream) noexcept {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t j = 0; j < 4; ++j) s_[j] = splitmix64(seed + (4 * stream + j) * golden);
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1).
  double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential() noexcept { return -std::log(uniform()); }

  // Box-Muller, one variate per call.
  double normal() noexcept {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace levy_smile
