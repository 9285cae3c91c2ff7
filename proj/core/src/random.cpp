#include "surftex/random.hpp"

#include <cmath>
#include <numbers>

#include "surftex/error.hpp"

namespace surftex {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSeedSalt = 0x5EEDC0DE5EEDC0DEULL;

std::uint64_t fnv1a(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed)
    : key_(splitmix64_finalize(seed ^ kSeedSalt)) {}

RandomStream RandomStream::substream(std::string_view name) const {
  return RandomStream(FromKey{}, splitmix64_finalize(key_ ^ splitmix64_finalize(fnv1a(name))));
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return RandomStream(FromKey{},
                      splitmix64_finalize(key_ + kGolden * splitmix64_finalize(index + 1)));
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return splitmix64_finalize(key_ + counter_ * kGolden);
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  if (lo == hi) {
    ++counter_;  // keep the draw count independent of the bounds
    return lo;
  }
  return lo + (hi - lo) * uniform();
}

double RandomStream::phase() {
  return std::numbers::pi - 2.0 * std::numbers::pi * uniform();
}

bool RandomStream::coin() { return (next_u64() >> 63) != 0; }

double RandomStream::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::normal(double mean, double sigma) {
  const double z = normal();
  return mean + sigma * z;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::invalid_argument, "uniform_index needs n > 0");
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % n;
  }
}

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    fail(ErrorCode::invalid_argument, "poisson mean must be finite and >= 0");
  if (mean > 1e6) fail(ErrorCode::invalid_argument, "poisson mean too large");
  std::uint64_t n = 0;
  double t = -std::log(uniform_open());
  while (t <= mean) {
    ++n;
    t -= std::log(uniform_open());
  }
  return n;
}

}  // namespace surftex
