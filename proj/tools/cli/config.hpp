#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "surftex/mill/config.hpp"
#include "surftex/sandblast.hpp"

namespace surftex::cli {

enum class Mode { sandblast, mill, stats, bench, fixture };
std::string_view to_string(Mode m) noexcept;

struct StatsOptions {
  int bins = 64;
  bool autocorrelation = true;
};

struct MillRun {
  mill::MillConfig cfg;
  double x0_mm = 0.0;
  double y0_mm = 0.0;
  double width_mm = 10.0;
  double height_mm = 10.0;
  double spacing_um = 12.2;
  /// Explicit pixel counts win over width_mm/height_mm.
  std::optional<int> width_px;
  std::optional<int> height_px;
  int tile_px = 128;
  std::optional<double> target_mean_um;
  std::optional<double> target_std_um;

  mill::Viewport viewport() const;
};

struct BenchOptions {
  std::vector<int> sizes{256, 512, 1024};
  std::vector<double> alphas{0.2, 0.5, 0.8};
  int repetitions = 3;
};

enum class FixtureKind { sandblasted, milled };

struct FixtureOptions {
  FixtureKind kind = FixtureKind::sandblasted;
  int width = 512;
  int height = 512;
  double spacing_um = 1.75;
  double mean_um = 5.0;
  double std_um = 1.5;
  /// Gaussian smoothing of the sandblasted noise, in pixels.
  double smoothing_px = 2.0;
};

struct RunConfig {
  Mode mode = Mode::stats;
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 0;
  std::optional<int> threads;
  SandblastConfig sandblast;
  /// Unset target size/spacing fall back to the down-sampled input.
  bool sandblast_size_set = false;
  bool sandblast_spacing_set = false;
  MillRun mill;
  StatsOptions stats;
  BenchOptions bench;
  FixtureOptions fixture;
};

/// Flat `key = value` lines; '#' starts a comment. Unknown keys, malformed
/// values and missing required keys raise Error(config) naming the key.
RunConfig parse_config_text(std::string_view text, Mode mode, std::string_view source = "config");
RunConfig parse_config_file(const std::filesystem::path& path, Mode mode);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> input;
  std::optional<int> threads;
  std::optional<std::pair<int, int>> size;
  std::optional<double> spacing_um;
};

/// "WxH" with positive integers.
std::pair<int, int> parse_size(std::string_view text);

/// Flags win over file values; SURFTEX_THREADS is consulted when neither
/// sets the thread count.
void apply_overrides(RunConfig& cfg, const Overrides& flags);

int resolved_threads(const RunConfig& cfg);

}  // namespace surftex::cli
