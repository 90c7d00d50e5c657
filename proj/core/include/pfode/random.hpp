#pragma once

#include <cstdint>

namespace pfode {

/// One independent Gaussian stream; a variate is a pure function of
/// (seed, stream_id, draw index).
struct GaussianStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

/// Uniform variate in (0, 1) for counter `counter` of the stream.
[[nodiscard]] double uniform_open(const GaussianStream& stream, std::uint64_t counter) noexcept;

/// Standard normal variate (Box-Muller over counters 2i and 2i+1).
[[nodiscard]] double standard_normal(const GaussianStream& stream, std::uint64_t draw_index) noexcept;

/// Brownian increment ~ Normal(0, dt).
[[nodiscard]] double gaussian_increment(const GaussianStream& stream, std::uint64_t draw_index,
                                        double dt);

}  // namespace pfode
