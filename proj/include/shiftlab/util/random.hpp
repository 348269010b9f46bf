#pragma once

#include <cstdint>

namespace shiftlab {

// Counter-based deterministic randomness. Every draw is a pure function of
// (seed, stream, index), so sequences can be extended to any coordinate on
// demand and parallel workers never share state.

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t hash_words(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b ^ 0x6a09e667f3bcc909ULL));
}

inline constexpr std::uint64_t hash_words(std::uint64_t a, std::uint64_t b,
                                          std::uint64_t c) noexcept {
  return hash_words(hash_words(a, b), c);
}

/// Child seed for a named substream. Tags keep unrelated draws independent.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag,
                                           std::uint64_t index = 0) noexcept {
  return hash_words(seed, tag ^ 0xa5a5a5a5a5a5a5a5ULL, index);
}

/// Uniform double in [0, 1) with 53 random bits.
inline constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                                        std::int64_t index) noexcept {
  return to_unit(hash_words(seed, stream, static_cast<std::uint64_t>(index)));
}

// Substream tags.
namespace stream {
inline constexpr std::uint64_t coordinate = 0x01;
inline constexpr std::uint64_t noise = 0x02;
inline constexpr std::uint64_t phase = 0x03;
inline constexpr std::uint64_t mixture = 0x04;
inline constexpr std::uint64_t point = 0x05;
inline constexpr std::uint64_t monte_carlo = 0x06;
inline constexpr std::uint64_t pair = 0x07;
inline constexpr std::uint64_t replicate = 0x08;
inline constexpr std::uint64_t collision = 0x09;
}  // namespace stream

/// Sequential view over one counter substream.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  double uniform() noexcept { return counter_uniform(seed_, stream_, counter_++); }
  std::uint64_t bits() noexcept {
    return hash_words(seed_, stream_, static_cast<std::uint64_t>(counter_++));
  }
  std::uint64_t below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::int64_t counter_ = 0;
};

}  // namespace shiftlab
