#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

namespace surftex::mill {

enum class Shape { indicator, cosine, bump };
enum class Interaction { min, latest, convex };
/// Temporal order of parallel passes: all passes in the same direction with
/// lines visited upwards or downwards, or alternating (meander).
enum class LineOrder { same_up, same_down, alternating };
enum class SpiralDirection { outward, inward };

std::string_view to_string(Shape s) noexcept;
std::string_view to_string(Interaction i) noexcept;
std::string_view to_string(LineOrder o) noexcept;
std::string_view to_string(SpiralDirection d) noexcept;
Shape parse_shape(std::string_view text);
Interaction parse_interaction(std::string_view text);
LineOrder parse_line_order(std::string_view text);
SpiralDirection parse_spiral_direction(std::string_view text);

struct NormalParam {
  double mean = 0.0;
  double sigma = 0.0;
};

struct ParallelPath {
  double beta = 0.0;  // line angle to the x-axis, radians
  LineOrder ordering = LineOrder::same_up;
};

struct SpiralPath {
  double origin_x_mm = 0.0;
  double origin_y_mm = 0.0;
  double beta = 0.0;
  int orientation = 1;  // 1 counter-clockwise, -1 mirrored in x
  SpiralDirection direction = SpiralDirection::outward;
};

/// Symmetric 2x2 covariance of the center jitter, mm^2.
struct Covariance2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  bool is_zero() const noexcept { return xx == 0.0 && xy == 0.0 && yy == 0.0; }
  /// Square root of the largest eigenvalue.
  double max_sigma() const noexcept;
};

/// Pixel grid in the plane. Pixel (x, y) has its center at
/// (x0 + (x + 0.5) s, y0 + (y + 0.5) s) with s = spacing_um / 1000 mm.
struct Viewport {
  double x0_mm = 0.0;
  double y0_mm = 0.0;
  int width_px = 0;
  int height_px = 0;
  double spacing_um = 1.0;

  /// Grid covering w_mm x h_mm starting at (x0, y0); pixel counts are rounded.
  static Viewport from_extent(double x0_mm, double y0_mm, double w_mm, double h_mm,
                              double spacing_um);

  double pixel_mm() const noexcept { return spacing_um / 1000.0; }
  double x_at(int px) const noexcept { return x0_mm + (px + 0.5) * pixel_mm(); }
  double y_at(int py) const noexcept { return y0_mm + (py + 0.5) * pixel_mm(); }
  void validate() const;
};

/// Lateral quantities in mm, heights in micrometres.
struct MillConfig {
  double d_mm = 4.0;
  double alpha = 0.2;
  double delta_mm = 0.09;
  Shape shape = Shape::cosine;
  Interaction interaction = Interaction::min;

  NormalParam w_minus{0.4, 0.0};
  NormalParam w_plus_i{0.1, 0.0};
  NormalParam w_plus_o{0.1, 0.0};

  double tilt_angle_rad = 0.0;
  double depth_um = 5.0;
  double sigma_l_minus = 0.0;
  double sigma_h_minus = 0.0;
  NormalParam l_plus_i{1.0, 0.0};
  NormalParam h_plus_i{1.0, 0.0};
  NormalParam l_plus_o{2.0, 0.0};
  NormalParam h_plus_o{2.0, 0.0};

  double noise_lambda = 0.0;
  double noise_tau = 0.0;

  double a_min = 0.5;
  double a_max = 0.5;
  double b_min = 0.5;
  double b_max = 0.5;

  Covariance2 sigma_c;
  double epsilon = 0.0;

  std::variant<ParallelPath, SpiralPath> path = ParallelPath{};
  std::uint64_t seed = 0;

  double radius_mm() const noexcept { return d_mm / 2.0; }
  /// Distance between neighbouring passes, (1 - alpha) d.
  double line_distance_mm() const noexcept { return (1.0 - alpha) * d_mm; }
  /// Indentation depth at the rear and front, l -/+ r sin(phi), in micrometres.
  double mu_l_minus() const noexcept;
  double mu_h_minus() const noexcept;
  /// Distance by which the viewport is dilated when placing nominal centers.
  double visibility_margin_mm() const noexcept;

  void validate() const;
};

/// alpha = 1 - a_e.
double alpha_from_width_of_cut(double a_e);

}  // namespace surftex::mill
