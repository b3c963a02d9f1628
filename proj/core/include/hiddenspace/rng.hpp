#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hs {

/// splitmix64 finaliser; used to derive independent seeds and counter-based streams.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for sub-stream `stream` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept;

/// Uniform double in [0,1) from 53 random bits.
inline double bits_to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Seeded generator with platform-independent draws.
///
/// std::uniform_*_distribution is implementation defined, so the few draws the
/// library needs are built directly on the mt19937_64 bit stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0,1).
  double uniform() { return bits_to_unit(engine_()); }

  /// Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t index(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hs
