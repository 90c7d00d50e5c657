#include "pfode/random.hpp"

#include <cmath>
#include <numbers>

#include "pfode/errors.hpp"

namespace pfode {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;

std::uint64_t stream_key(const GaussianStream& stream) noexcept {
  return mix64(stream.seed ^ mix64(stream.stream_id + kStreamSalt));
}

}  // namespace

double uniform_open(const GaussianStream& stream, std::uint64_t counter) noexcept {
  const std::uint64_t bits = mix64(stream_key(stream) + (counter + 1) * kGolden);
  // 53 random bits, offset by half an ulp so neither 0 nor 1 can occur.
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(const GaussianStream& stream, std::uint64_t draw_index) noexcept {
  const double u1 = uniform_open(stream, 2 * draw_index);
  const double u2 = uniform_open(stream, 2 * draw_index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double gaussian_increment(const GaussianStream& stream, std::uint64_t draw_index, double dt) {
  if (!(dt > 0.0)) {
    throw DomainError("gaussian_increment: dt must be positive");
  }
  return std::sqrt(dt) * standard_normal(stream, draw_index);
}

}  // namespace pfode
