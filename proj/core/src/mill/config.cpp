#include "surftex/mill/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "surftex/error.hpp"

namespace surftex::mill {
namespace {

template <class E, std::size_t N>
E parse_enum(std::string_view text, const std::pair<std::string_view, E> (&table)[N],
             const char* what) {
  std::string options;
  for (const auto& [name, value] : table) {
    if (name == text) return value;
    if (!options.empty()) options += ", ";
    options += name;
  }
  fail(ErrorCode::config,
       "unknown " + std::string(what) + " '" + std::string(text) + "' (expected " + options + ")");
}

constexpr std::pair<std::string_view, Shape> kShapes[] = {
    {"indicator", Shape::indicator}, {"cosine", Shape::cosine}, {"bump", Shape::bump}};
constexpr std::pair<std::string_view, Interaction> kInteractions[] = {
    {"min", Interaction::min}, {"latest", Interaction::latest}, {"convex", Interaction::convex}};
constexpr std::pair<std::string_view, LineOrder> kOrders[] = {{"same-up", LineOrder::same_up},
                                                              {"same-down", LineOrder::same_down},
                                                              {"alternating", LineOrder::alternating}};
constexpr std::pair<std::string_view, SpiralDirection> kDirections[] = {
    {"outward", SpiralDirection::outward}, {"inward", SpiralDirection::inward}};

template <class E, std::size_t N>
std::string_view name_of(E value, const std::pair<std::string_view, E> (&table)[N]) {
  for (const auto& [name, v] : table)
    if (v == value) return name;
  return "?";
}

void check_sigma(double s, const char* name) {
  if (!(s >= 0.0) || !std::isfinite(s))
    fail(ErrorCode::invalid_argument, std::string(name) + " must be a finite value >= 0");
}

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) fail(ErrorCode::invalid_argument, std::string(name) + " must be finite");
}

}  // namespace

std::string_view to_string(Shape s) noexcept { return name_of(s, kShapes); }
std::string_view to_string(Interaction i) noexcept { return name_of(i, kInteractions); }
std::string_view to_string(LineOrder o) noexcept { return name_of(o, kOrders); }
std::string_view to_string(SpiralDirection d) noexcept { return name_of(d, kDirections); }
Shape parse_shape(std::string_view t) { return parse_enum(t, kShapes, "shape"); }
Interaction parse_interaction(std::string_view t) {
  return parse_enum(t, kInteractions, "interaction");
}
LineOrder parse_line_order(std::string_view t) { return parse_enum(t, kOrders, "line ordering"); }
SpiralDirection parse_spiral_direction(std::string_view t) {
  return parse_enum(t, kDirections, "spiral direction");
}

double Covariance2::max_sigma() const noexcept {
  const double m = 0.5 * (xx + yy);
  const double d = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
  return std::sqrt(std::max(0.0, m + d));
}

Viewport Viewport::from_extent(double x0_mm, double y0_mm, double w_mm, double h_mm,
                               double spacing_um) {
  if (!(spacing_um > 0.0) || !(w_mm > 0.0) || !(h_mm > 0.0))
    fail(ErrorCode::invalid_argument, "viewport extent and spacing must be positive");
  Viewport v{x0_mm, y0_mm, 0, 0, spacing_um};
  v.width_px = std::max(1, static_cast<int>(std::lround(w_mm * 1000.0 / spacing_um)));
  v.height_px = std::max(1, static_cast<int>(std::lround(h_mm * 1000.0 / spacing_um)));
  return v;
}

void Viewport::validate() const {
  if (width_px < 1 || height_px < 1)
    fail(ErrorCode::invalid_argument, "viewport needs at least one pixel per axis");
  if (!(spacing_um > 0.0) || !std::isfinite(spacing_um))
    fail(ErrorCode::invalid_argument, "viewport spacing must be positive");
  check_finite(x0_mm, "viewport x0");
  check_finite(y0_mm, "viewport y0");
}

double MillConfig::mu_l_minus() const noexcept {
  return depth_um - radius_mm() * std::sin(tilt_angle_rad) * 1000.0;
}

double MillConfig::mu_h_minus() const noexcept {
  return depth_um + radius_mm() * std::sin(tilt_angle_rad) * 1000.0;
}

double MillConfig::visibility_margin_mm() const noexcept {
  double m = radius_mm() + 3.0 * sigma_c.max_sigma();
  if (shape == Shape::bump) m += std::max(0.0, w_plus_o.mean) + 3.0 * w_plus_o.sigma;
  return m;
}

void MillConfig::validate() const {
  if (!(d_mm > 0.0) || !std::isfinite(d_mm))
    fail(ErrorCode::invalid_argument, "head diameter must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(ErrorCode::invalid_argument, "overlap alpha must lie in (0, 1)");
  if (!(delta_mm > 0.0) || !std::isfinite(delta_mm))
    fail(ErrorCode::invalid_argument, "center spacing delta must be positive");
  const double r = radius_mm();
  if (!(w_minus.mean > 0.0 && w_minus.mean < r))
    fail(ErrorCode::invalid_argument, "mean indentation width must lie in (0, d/2)");
  if (!(w_plus_i.mean >= 0.0 && w_plus_i.mean < r - w_minus.mean))
    fail(ErrorCode::invalid_argument, "mean inner accumulation width must lie in [0, d/2 - w-)");
  if (!(w_plus_o.mean >= 0.0) || !std::isfinite(w_plus_o.mean))
    fail(ErrorCode::invalid_argument, "mean outer accumulation width must be >= 0");
  check_sigma(w_minus.sigma, "sigma of w-");
  check_sigma(w_plus_i.sigma, "sigma of w+i");
  check_sigma(w_plus_o.sigma, "sigma of w+o");
  check_sigma(sigma_l_minus, "sigma of l-");
  check_sigma(sigma_h_minus, "sigma of h-");
  for (const auto* p : {&l_plus_i, &h_plus_i, &l_plus_o, &h_plus_o}) {
    check_finite(p->mean, "accumulation scaling mean");
    check_sigma(p->sigma, "accumulation scaling sigma");
  }
  check_finite(tilt_angle_rad, "tilt angle");
  check_finite(depth_um, "depth");
  if (!(noise_lambda >= 0.0 && noise_lambda <= 1e4))
    fail(ErrorCode::invalid_argument, "noise lambda must lie in [0, 1e4]");
  if (!(noise_tau >= 0.0 && noise_tau <= 1e6))
    fail(ErrorCode::invalid_argument, "noise tau must lie in [0, 1e6]");
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(unit(a_min) && unit(a_max) && unit(b_min) && unit(b_max) && a_min <= a_max &&
        b_min <= b_max))
    fail(ErrorCode::invalid_argument, "convex weight bounds must satisfy 0 <= min <= max <= 1");
  if (!(sigma_c.xx >= 0.0 && sigma_c.yy >= 0.0 && std::isfinite(sigma_c.xy) &&
        sigma_c.xy * sigma_c.xy <= sigma_c.xx * sigma_c.yy))
    fail(ErrorCode::invalid_argument, "center covariance must be positive semi-definite");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    fail(ErrorCode::invalid_argument, "reorder fraction epsilon must lie in [0, 1]");
  if (const auto* s = std::get_if<SpiralPath>(&path)) {
    if (s->orientation != 1 && s->orientation != -1)
      fail(ErrorCode::invalid_argument, "spiral orientation must be 1 or -1");
    check_finite(s->origin_x_mm, "spiral origin");
    check_finite(s->origin_y_mm, "spiral origin");
    check_finite(s->beta, "spiral beta");
  } else {
    check_finite(std::get<ParallelPath>(path).beta, "line angle beta");
  }
}

double alpha_from_width_of_cut(double a_e) {
  if (!(a_e > 0.0 && a_e < 1.0))
    fail(ErrorCode::invalid_argument, "width of cut a_e must lie in (0, 1)");
  return 1.0 - a_e;
}

}  // namespace surftex::mill
