#pragma once

#include <cstdint>

namespace specstream {

// Counter-based randomness. Every draw is a pure function of
// (seed, stream tag, counter), so decisions do not depend on how many
// draws some other component made before.
enum class RngStream : std::uint64_t {
  Sample = 1,
  Resparsify = 2,
  JlSigns = 3,
  Gaussian = 4,
  Permute = 5,
};

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_counter(std::uint64_t seed, RngStream stream,
                                     std::uint64_t counter) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(stream) * 0xD6E8FEB86659FD93ULL);
  return mix64(h ^ counter);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double uniform01(std::uint64_t seed, RngStream stream, std::uint64_t counter) noexcept {
  return static_cast<double>(hash_counter(seed, stream, counter) >> 11) * 0x1.0p-53;
}

/// Derives an independent seed for a sub-component (e.g. one JL block).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(mix64(seed) ^ mix64(tag + 0x632BE59BD9B4E019ULL));
}

/// Standard normal via Box-Muller over two counter draws. Used instead of
/// std::normal_distribution, whose output is implementation-defined.
double standard_normal(std::uint64_t seed, RngStream stream, std::uint64_t counter) noexcept;

/// Bernoulli(p) decision keyed by (seed, index). p >= 1 always succeeds, p <= 0 never does.
inline bool bernoulli(std::uint64_t seed, std::uint64_t index, double p) noexcept {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return uniform01(seed, RngStream::Sample, index) < p;
}

}  // namespace specstream
