#pragma once

#include <cstdint>
#include <string_view>

namespace surftex {

/// Counter-based pseudo-random stream.
///
/// The i-th raw draw is splitmix64_finalize(key + i * 0x9E3779B97F4A7C15),
/// i.e. SplitMix64 evaluated in counter mode. The key is derived from the
/// seed (and from stream names for sub-streams) with the same finalizer, so a
/// (seed, draw order) pair fixes every value on every platform. Real-valued
/// variates are built from raw draws with fixed recipes documented on each
/// method; none of them go through <random> distributions, whose algorithms
/// are implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Independent stream keyed by name. Adding draws to one sub-stream never
  /// shifts the values seen by another.
  RandomStream substream(std::string_view name) const;
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t next_u64();

  /// 53-bit uniform in [0, 1).
  double uniform();
  /// Uniform in (0, 1].
  double uniform_open();
  /// Uniform in [lo, hi). Returns lo when lo == hi.
  double uniform(double lo, double hi);
  /// Uniform angle in (-pi, pi], computed as pi - 2*pi*uniform().
  double phase();
  /// Fair coin.
  bool coin();
  /// Standard normal by Box-Muller (two raw draws, cosine branch only).
  double normal();
  double normal(double mean, double sigma);
  /// Unbiased integer in [0, n) by rejection. n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Poisson variate counting unit-rate exponential arrivals up to `mean`.
  std::uint64_t poisson(double mean);

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t position() const noexcept { return counter_; }

 private:
  struct FromKey {};
  RandomStream(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64_finalize(std::uint64_t z) noexcept;

}  // namespace surftex
