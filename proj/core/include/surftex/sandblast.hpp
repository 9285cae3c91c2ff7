#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "surftex/heightfield.hpp"
#include "surftex/quilt.hpp"

namespace surftex {

enum class Generator { rpn, adsn };
enum class SizeStrategy { automatic, crop, pad, stitch };

std::string_view to_string(Generator g) noexcept;
std::string_view to_string(SizeStrategy s) noexcept;
Generator parse_generator(std::string_view text);
SizeStrategy parse_size_strategy(std::string_view text);

struct SandblastConfig {
  int target_width = 0;
  int target_height = 0;
  double target_spacing_um = 0.0;
  Generator method = Generator::rpn;
  int patch_size = 256;
  int overlap = 128;
  std::uint64_t seed = 0;
  SizeStrategy strategy = SizeStrategy::automatic;
  /// Width of the blending ramp used by the pad strategy.
  int blend_band = 8;
  int threads = 1;

  void validate() const;
};

struct SandblastResult {
  HeightField field;
  /// Branch actually taken; never `automatic`.
  SizeStrategy branch = SizeStrategy::crop;
  /// Input after spacing adaptation.
  int downsampled_width = 0;
  int downsampled_height = 0;
  std::optional<StitchPlan> plan;
};

/// Periodic component of the periodic-plus-smooth split; keeps the mean.
HeightField preprocess_periodic(const HeightField& input);

/// Down-samples to the target spacing, then reaches the target size by
/// cropping (enough material), padding, or quilting generated patches.
SandblastResult synthesize_sandblast_detailed(const HeightField& input, const SandblastConfig& cfg);
HeightField synthesize_sandblast(const HeightField& input, const SandblastConfig& cfg);

}  // namespace surftex
