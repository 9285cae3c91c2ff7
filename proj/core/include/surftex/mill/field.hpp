#pragma once

#include <cstddef>
#include <vector>

#include "surftex/heightfield.hpp"
#include "surftex/mill/config.hpp"
#include "surftex/mill/rings.hpp"
#include "surftex/mill/toolpath.hpp"

namespace surftex::mill {

/// Exact test whether the support annulus of `ring` meets `rect`.
bool annulus_intersects(const RingParams& ring, Shape shape, const Rect& rect) noexcept;

/// Uniform-grid spatial hash over ring bounding boxes.
class RingIndex {
 public:
  RingIndex(const std::vector<RingParams>& rings, Shape shape);

  /// Positions (into the ring vector) of all rings whose support meets
  /// `rect`, ascending.
  std::vector<std::size_t> query(const Rect& rect) const;

 private:
  const std::vector<RingParams>* rings_;
  Shape shape_;
  double x0_ = 0.0;
  double y0_ = 0.0;
  double cell_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<std::size_t>> cells_;
};

std::vector<std::size_t> ring_index(const std::vector<RingParams>& rings, Shape shape,
                                    const Rect& rect);

struct EvalOptions {
  int tile_px = 128;
  int threads = 1;
};

/// Combines rings in vector order on the viewport grid. The result does not
/// depend on the tiling or thread count.
HeightField evaluate_field(const std::vector<RingParams>& rings, Shape shape,
                           Interaction interaction, const Viewport& viewport,
                           const EvalOptions& options = {});

/// Affine map to the given mean and (biased) variance.
HeightField adapt_height(const HeightField& field, double target_mean, double target_variance);

struct MillResult {
  HeightField field;
  std::size_t rings_generated = 0;
  /// Rings whose support meets the viewport.
  std::size_t rings_visible = 0;
};

/// Path, ring sampling and grid evaluation for `cfg` with seed cfg.seed.
MillResult render(const MillConfig& cfg, const Viewport& viewport, const EvalOptions& options = {});

}  // namespace surftex::mill
