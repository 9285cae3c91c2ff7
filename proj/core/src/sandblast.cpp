#include "surftex/sandblast.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surftex/error.hpp"
#include "surftex/random.hpp"
#include "surftex/spectral.hpp"
#include "surftex/stationary.hpp"

namespace surftex {
namespace {

HeightField generate(const HeightField& exemplar, Generator method, RandomStream& rng) {
  return method == Generator::rpn ? rpn(exemplar, rng) : adsn(exemplar, rng);
}

HeightField centered_crop(const HeightField& f, int w, int h) {
  if (f.width() == w && f.height() == h) return f;
  return crop(f, (f.width() - w) / 2, (f.height() - h) / 2, w, h);
}

}  // namespace

std::string_view to_string(Generator g) noexcept {
  return g == Generator::rpn ? "rpn" : "adsn";
}

std::string_view to_string(SizeStrategy s) noexcept {
  switch (s) {
    case SizeStrategy::automatic: return "auto";
    case SizeStrategy::crop: return "crop";
    case SizeStrategy::pad: return "pad";
    case SizeStrategy::stitch: return "stitch";
  }
  return "?";
}

Generator parse_generator(std::string_view text) {
  if (text == "rpn") return Generator::rpn;
  if (text == "adsn") return Generator::adsn;
  fail(ErrorCode::config, "unknown method '" + std::string(text) + "' (expected rpn or adsn)");
}

SizeStrategy parse_size_strategy(std::string_view text) {
  if (text == "auto") return SizeStrategy::automatic;
  if (text == "crop") return SizeStrategy::crop;
  if (text == "pad") return SizeStrategy::pad;
  if (text == "stitch") return SizeStrategy::stitch;
  fail(ErrorCode::config,
       "unknown size strategy '" + std::string(text) + "' (expected auto, crop, pad or stitch)");
}

void SandblastConfig::validate() const {
  if (target_width < 1 || target_height < 1)
    fail(ErrorCode::invalid_argument, "target size must be positive");
  if (!(target_spacing_um > 0.0) || !std::isfinite(target_spacing_um))
    fail(ErrorCode::invalid_argument, "target spacing must be positive and finite");
  if (!(overlap > 1 && overlap < patch_size))
    fail(ErrorCode::invalid_argument, "patch settings need 1 < overlap < patch_size");
  if (blend_band < 1) fail(ErrorCode::invalid_argument, "blend band must be at least 1");
  if (threads < 1) fail(ErrorCode::invalid_argument, "threads must be at least 1");
}

HeightField preprocess_periodic(const HeightField& input) {
  if (input.width() < 2 || input.height() < 2) return input;
  return periodic_decompose(input).periodic;
}

SandblastResult synthesize_sandblast_detailed(const HeightField& input, const SandblastConfig& cfg) {
  cfg.validate();
  const double factor = cfg.target_spacing_um / input.spacing_um();
  if (factor < 1.0 - 1e-12)
    fail(ErrorCode::invalid_argument,
         "target spacing " + std::to_string(cfg.target_spacing_um) +
             " um is finer than the input spacing " + std::to_string(input.spacing_um()) + " um");

  HeightField ds = factor <= 1.0 ? input : downsample_nn(input, factor);
  ds = ds.with_spacing(cfg.target_spacing_um);

  const int tw = cfg.target_width;
  const int th = cfg.target_height;
  const bool enough = ds.width() >= tw && ds.height() >= th;

  SandblastResult out{HeightField::filled(1, 1, cfg.target_spacing_um, 0.0), cfg.strategy,
                      ds.width(), ds.height(), std::nullopt};
  if (out.branch == SizeStrategy::automatic)
    out.branch = enough ? SizeStrategy::crop : SizeStrategy::stitch;

  const RandomStream root(cfg.seed);
  switch (out.branch) {
    case SizeStrategy::crop: {
      if (!enough)
        fail(ErrorCode::invalid_argument,
             "crop needs a down-sampled input of at least the target size, got " +
                 std::to_string(ds.width()) + "x" + std::to_string(ds.height()));
      auto rng = root.substream("sandblast.generate");
      out.field = generate(preprocess_periodic(centered_crop(ds, tw, th)), cfg.method, rng);
      break;
    }
    case SizeStrategy::pad: {
      const auto core = centered_crop(ds, std::min(tw, ds.width()), std::min(th, ds.height()));
      const auto extended =
          extend_input(preprocess_periodic(core), tw, th, ExtendOptions{cfg.blend_band});
      auto rng = root.substream("sandblast.generate");
      out.field = generate(extended, cfg.method, rng);
      break;
    }
    case SizeStrategy::stitch: {
      const int m = cfg.patch_size;
      if (ds.width() < m || ds.height() < m)
        fail(ErrorCode::invalid_argument,
             "stitching needs a down-sampled input of at least one patch (" + std::to_string(m) +
                 " px) per axis, got " + std::to_string(ds.width()) + "x" +
                 std::to_string(ds.height()));
      const auto plan = StitchPlan::covering(std::max(tw, th), m, cfg.overlap);
      const auto method = cfg.method;
      auto provider = [&ds, m, method](int, int, RandomStream& rng) {
        const int x0 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(ds.width() - m + 1)));
        const int y0 = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(ds.height() - m + 1)));
        return generate(preprocess_periodic(crop(ds, x0, y0, m, m)), method, rng);
      };
      const auto canvas = stitch_all(plan, provider, root.substream("sandblast.patches"),
                                     StitchOptions{cfg.threads});
      out.field = crop(canvas, 0, 0, tw, th);
      out.plan = plan;
      break;
    }
    case SizeStrategy::automatic:
      break;
  }
  return out;
}

HeightField synthesize_sandblast(const HeightField& input, const SandblastConfig& cfg) {
  return synthesize_sandblast_detailed(input, cfg).field;
}

}  // namespace surftex
