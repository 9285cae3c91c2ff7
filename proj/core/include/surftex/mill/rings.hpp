#pragma once

#include <cstddef>
#include <vector>

#include "surftex/mill/config.hpp"
#include "surftex/mill/toolpath.hpp"
#include "surftex/random.hpp"

namespace surftex::mill {

struct NoiseTerm {
  int tau = 0;       // frequency around the ring
  double xi = 0.0;   // phase shift in (-pi, pi]
};

/// Everything needed to evaluate one ring; lateral mm, heights um.
struct RingParams {
  std::size_t index = 0;  // position on the nominal path
  double cx = 0.0;
  double cy = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double w_minus = 0.0;
  double w_plus_i = 0.0;
  double w_plus_o = 0.0;
  double l_minus = 0.0;
  double h_minus = 0.0;
  double l_plus_i = 0.0;
  double h_plus_i = 0.0;
  double l_plus_o = 0.0;
  double h_plus_o = 0.0;
  std::vector<NoiseTerm> noise;
  double a = 0.0;  // convex weight at the rear point
  double b = 0.0;  // convex weight at the front point
};

/// Which annulus a distance from the center falls into. Shared boundaries go
/// to the indentation first, then the inner band.
enum class Band { none, inner, indentation, outer };
Band band_at(const RingParams& ring, double dist) noexcept;

/// Support P_k: the indentation, plus both accumulation bands for bump shapes.
bool in_support(const RingParams& ring, Shape shape, double x, double y) noexcept;
double support_inner_radius(const RingParams& ring, Shape shape) noexcept;
double support_outer_radius(const RingParams& ring, Shape shape) noexcept;
/// Rings with zero indentation width have empty support.
bool has_support(const RingParams& ring) noexcept;

double shape_value(const RingParams& ring, double x, double y, Shape shape) noexcept;
double tilt_value(const RingParams& ring, double x, double y) noexcept;
double noise_value(const RingParams& ring, double x, double y, Shape shape) noexcept;
/// S * T + N.
double ring_value(const RingParams& ring, double x, double y, Shape shape) noexcept;
/// Convex blending weight: plane from a (rear) to b (front) on the support,
/// clamped to [0, 1]; zero elsewhere.
double convex_weight(const RingParams& ring, double x, double y, Shape shape) noexcept;

/// One ring per path point, in temporal order after the epsilon reordering.
/// Draws from the "centers", "rings", "noise" and "order" substreams of `rng`.
std::vector<RingParams> sample_rings(const ToolPath& path, const MillConfig& cfg,
                                     const RandomStream& rng);

}  // namespace surftex::mill
