#include "surftex/mill/toolpath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "surftex/error.hpp"

namespace surftex::mill {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long long kMaxPoints = 50'000'000;

struct Line {
  int j;
  double offset;  // normal coordinate n . c
  std::vector<PathPoint> pts;  // sorted by increasing along-line coordinate
};

}  // namespace

Rect pixel_center_rect(const Viewport& v) noexcept {
  return {v.x_at(0), v.y_at(0), v.x_at(v.width_px - 1), v.y_at(v.height_px - 1)};
}

double wrap_angle(double a) noexcept {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

ToolPath parallel_centers(const MillConfig& cfg, const ParallelPath& path, const Rect& region) {
  const double beta = path.beta;
  const double rho = cfg.line_distance_mm();
  const double delta = cfg.delta_mm;
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const bool vertical = std::abs(cb) < 1e-12;
  const double ux = vertical ? 0.0 : cb;
  const double uy = vertical ? (sb > 0 ? 1.0 : -1.0) : sb;
  const double nx = -uy;
  const double ny = ux;

  const double cx[4] = {region.x0, region.x1, region.x0, region.x1};
  const double cy[4] = {region.y0, region.y0, region.y1, region.y1};
  double nmin = INFINITY, nmax = -INFINITY, umin = INFINITY, umax = -INFINITY;
  for (int c = 0; c < 4; ++c) {
    nmin = std::min(nmin, nx * cx[c] + ny * cy[c]);
    nmax = std::max(nmax, nx * cx[c] + ny * cy[c]);
    umin = std::min(umin, ux * cx[c] + uy * cy[c]);
    umax = std::max(umax, ux * cx[c] + uy * cy[c]);
  }

  auto point = [&](long long i, long long j) {
    if (vertical) return PathPoint{j * rho, i * delta, 0.0, 0, 0};
    const double xi = i * delta * cb;
    return PathPoint{xi, std::tan(beta) * xi + j * rho / cb, 0.0, 0, 0};
  };
  // Generic case: line j lies at n.c = j*rho and point i at u.c = i*delta +
  // j*rho*tan(beta). Vertical case: x = j*rho, y = i*delta.
  const double j_a = vertical ? region.x0 / rho : nmin / rho;
  const double j_b = vertical ? region.x1 / rho : nmax / rho;
  const long long j_lo = static_cast<long long>(std::ceil(j_a)) - 1;
  const long long j_hi = static_cast<long long>(std::floor(j_b)) + 1;

  std::vector<Line> lines;
  long long total = 0;
  for (long long j = j_lo; j <= j_hi; ++j) {
    const double shift = vertical ? 0.0 : j * rho * std::tan(beta);
    const double i_a = vertical ? region.y0 / delta : (umin - shift) / delta;
    const double i_b = vertical ? region.y1 / delta : (umax - shift) / delta;
    const long long i_lo = static_cast<long long>(std::ceil(i_a)) - 1;
    const long long i_hi = static_cast<long long>(std::floor(i_b)) + 1;
    total += i_hi - i_lo + 1;
    if (total > kMaxPoints) fail(ErrorCode::out_of_range, "tool path has too many centers");
    Line line{static_cast<int>(j), 0.0, {}};
    for (long long i = i_lo; i <= i_hi; ++i) {
      PathPoint p = point(i, j);
      if (!region.contains(p.x, p.y)) continue;
      p.line = static_cast<int>(j);
      p.step = static_cast<int>(i);
      line.pts.push_back(p);
    }
    if (line.pts.empty()) continue;
    line.offset = nx * line.pts.front().x + ny * line.pts.front().y;
    std::sort(line.pts.begin(), line.pts.end(), [&](const PathPoint& a, const PathPoint& b) {
      return ux * a.x + uy * a.y < ux * b.x + uy * b.y;
    });
    lines.push_back(std::move(line));
  }

  const bool down = path.ordering == LineOrder::same_down;
  std::sort(lines.begin(), lines.end(), [down](const Line& a, const Line& b) {
    return down ? a.offset > b.offset : a.offset < b.offset;
  });

  ToolPath out;
  out.points.reserve(static_cast<std::size_t>(total));
  const double forward = wrap_angle(std::atan2(uy, ux));
  const double backward = wrap_angle(forward + kPi);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    auto& pts = lines[l].pts;
    const bool reverse = path.ordering == LineOrder::alternating && l % 2 == 1;
    if (reverse) std::reverse(pts.begin(), pts.end());
    for (auto& p : pts) {
      p.theta = reverse ? backward : forward;
      out.points.push_back(p);
    }
  }
  return out;
}

double spiral_arc_length(double phi, double a) {
  if (!(phi >= 0.0)) fail(ErrorCode::invalid_argument, "spiral angle must be >= 0");
  if (!(a > 0.0)) fail(ErrorCode::invalid_argument, "spiral parameter a must be positive");
  const double s = std::sqrt(1.0 + phi * phi);
  return 0.5 * a * (phi * s + std::asinh(phi));
}

double spiral_arc_length_deriv(double phi, double a) {
  if (!(phi >= 0.0)) fail(ErrorCode::invalid_argument, "spiral angle must be >= 0");
  if (!(a > 0.0)) fail(ErrorCode::invalid_argument, "spiral parameter a must be positive");
  return a * std::sqrt(1.0 + phi * phi);
}

std::vector<double> spiral_angles(double a, double delta, int count) {
  if (count < 0) fail(ErrorCode::invalid_argument, "negative point count");
  if (!(delta > 0.0)) fail(ErrorCode::invalid_argument, "delta must be positive");
  std::vector<double> phi(static_cast<std::size_t>(count));
  if (count == 0) return phi;
  phi[0] = 0.0;
  for (int k = 1; k < count; ++k) {
    const double p = phi[k - 1];
    phi[k] = p - (spiral_arc_length(p, a) - k * delta) / spiral_arc_length_deriv(p, a);
  }
  return phi;
}

Point2 spiral_point(const SpiralPath& path, double a, double phi) noexcept {
  return {path.orientation * a * phi * std::cos(phi + path.beta) + path.origin_x_mm,
          a * phi * std::sin(phi + path.beta) + path.origin_y_mm};
}

ToolPath spiral_centers(const MillConfig& cfg, const SpiralPath& path, const Rect& region) {
  const double a = cfg.line_distance_mm() / (2.0 * kPi);
  const double delta = cfg.delta_mm;
  double reach = 0.0;
  for (double x : {region.x0, region.x1})
    for (double y : {region.y0, region.y1})
      reach = std::max(reach, std::hypot(x - path.origin_x_mm, y - path.origin_y_mm));

  // Keep going until the spiral radius a*phi has left the region for good.
  std::vector<Point2> pts{spiral_point(path, a, 0.0)};
  double phi = 0.0;
  for (long long k = 1; a * phi <= reach + delta; ++k) {
    if (k > kMaxPoints) fail(ErrorCode::out_of_range, "tool path has too many centers");
    phi = phi - (spiral_arc_length(phi, a) - static_cast<double>(k) * delta) /
                    spiral_arc_length_deriv(phi, a);
    pts.push_back(spiral_point(path, a, phi));
  }
  if (path.direction == SpiralDirection::inward) std::reverse(pts.begin(), pts.end());

  const std::size_t n = pts.size();
  ToolPath out;
  double last_theta = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n)
      last_theta = wrap_angle(std::atan2(pts[k + 1].y - pts[k].y, pts[k + 1].x - pts[k].x));
    if (!region.contains(pts[k].x, pts[k].y)) continue;
    out.points.push_back({pts[k].x, pts[k].y, last_theta, 0, static_cast<int>(k)});
  }
  return out;
}

ToolPath tool_path(const MillConfig& cfg, const Viewport& viewport) {
  cfg.validate();
  viewport.validate();
  const Rect region = pixel_center_rect(viewport).dilated(cfg.visibility_margin_mm());
  if (const auto* s = std::get_if<SpiralPath>(&cfg.path)) return spiral_centers(cfg, *s, region);
  return parallel_centers(cfg, std::get<ParallelPath>(cfg.path), region);
}

}  // namespace surftex::mill
