#pragma once

#include <cstdint>

#include "cli/config.hpp"
#include "surftex/heightfield.hpp"

namespace surftex::cli {

/// Pseudo-measurement with exactly the declared mean and standard deviation
/// (before any float32 storage).
///
/// sandblasted: white Gaussian noise smoothed by a periodic Gaussian blur of
/// `smoothing_px` pixels. milled: a zero-jitter parallel cosine-ring render
/// (d = 4 mm, alpha = 0.2, delta = 0.09 mm) with light width jitter.
HeightField fixture_gen(const FixtureOptions& options, std::uint64_t seed);

}  // namespace surftex::cli
