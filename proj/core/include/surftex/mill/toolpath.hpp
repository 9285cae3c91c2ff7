#pragma once

#include <vector>

#include "surftex/mill/config.hpp"

namespace surftex::mill {

struct PathPoint {
  double x = 0.0;  // mm
  double y = 0.0;
  double theta = 0.0;  // motion direction in (-pi, pi]
  int line = 0;        // pass index j (0 for spirals)
  int step = 0;        // index i along the pass, or k along the spiral
};

/// Nominal ring centers in temporal order.
struct ToolPath {
  std::vector<PathPoint> points;
};

/// Axis-aligned rectangle in mm, bounds inclusive.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(double x, double y) const noexcept {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
  Rect dilated(double m) const noexcept { return {x0 - m, y0 - m, x1 + m, y1 + m}; }
};

/// Rectangle spanned by the pixel centers of the viewport.
Rect pixel_center_rect(const Viewport& v) noexcept;

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a) noexcept;

/// Centers of the parallel pattern lying inside `region`: line j at normal
/// offset j*rho, points i*delta apart along it.
ToolPath parallel_centers(const MillConfig& cfg, const ParallelPath& path, const Rect& region);

double spiral_arc_length(double phi, double a);
double spiral_arc_length_deriv(double phi, double a);

/// Angles from a single Newton step per point, starting at phi_0 = 0 and
/// aiming at arc length k * delta.
std::vector<double> spiral_angles(double a, double delta, int count);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};
Point2 spiral_point(const SpiralPath& path, double a, double phi) noexcept;

/// Spiral with a = rho / (2 pi); every center inside `region` in temporal order.
ToolPath spiral_centers(const MillConfig& cfg, const SpiralPath& path, const Rect& region);

/// Nominal centers for the configured path, covering `viewport` dilated by the
/// visibility margin.
ToolPath tool_path(const MillConfig& cfg, const Viewport& viewport);

}  // namespace surftex::mill
