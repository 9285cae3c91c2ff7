#include "surftex/mill/field.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "surftex/error.hpp"

namespace surftex::mill {
namespace {

constexpr double kSlack = 1e-9;

}  // namespace

bool annulus_intersects(const RingParams& ring, Shape shape, const Rect& rect) noexcept {
  if (!has_support(ring)) return false;
  const double ro = support_outer_radius(ring, shape);
  const double ri = support_inner_radius(ring, shape);
  const double nx = std::clamp(ring.cx, rect.x0, rect.x1);
  const double ny = std::clamp(ring.cy, rect.y0, rect.y1);
  const double near = std::hypot(nx - ring.cx, ny - ring.cy);
  const double fx = std::max(std::abs(rect.x0 - ring.cx), std::abs(rect.x1 - ring.cx));
  const double fy = std::max(std::abs(rect.y0 - ring.cy), std::abs(rect.y1 - ring.cy));
  const double far = std::hypot(fx, fy);
  return near <= ro + kSlack && far >= ri - kSlack;
}

RingIndex::RingIndex(const std::vector<RingParams>& rings, Shape shape)
    : rings_(&rings), shape_(shape) {
  if (rings.empty()) return;
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY, rmax = 0.0;
  for (const auto& ring : rings) {
    const double ro = support_outer_radius(ring, shape);
    rmax = std::max(rmax, ro);
    x0 = std::min(x0, ring.cx - ro);
    y0 = std::min(y0, ring.cy - ro);
    x1 = std::max(x1, ring.cx + ro);
    y1 = std::max(y1, ring.cy + ro);
  }
  cell_ = std::max(2.0 * rmax, 1e-6);
  x0_ = x0;
  y0_ = y0;
  nx_ = std::max(1, static_cast<int>(std::ceil((x1 - x0) / cell_)));
  ny_ = std::max(1, static_cast<int>(std::ceil((y1 - y0) / cell_)));
  if (static_cast<double>(nx_) * ny_ > 4e6)
    fail(ErrorCode::out_of_range, "ring scene too sparse for the spatial index");
  cells_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (std::size_t k = 0; k < rings.size(); ++k) {
    const auto& ring = rings[k];
    if (!has_support(ring)) continue;
    const double ro = support_outer_radius(ring, shape);
    const int cx0 = std::clamp(static_cast<int>((ring.cx - ro - x0_) / cell_), 0, nx_ - 1);
    const int cx1 = std::clamp(static_cast<int>((ring.cx + ro - x0_) / cell_), 0, nx_ - 1);
    const int cy0 = std::clamp(static_cast<int>((ring.cy - ro - y0_) / cell_), 0, ny_ - 1);
    const int cy1 = std::clamp(static_cast<int>((ring.cy + ro - y0_) / cell_), 0, ny_ - 1);
    for (int cy = cy0; cy <= cy1; ++cy)
      for (int cx = cx0; cx <= cx1; ++cx)
        cells_[static_cast<std::size_t>(cy) * nx_ + cx].push_back(k);
  }
}

std::vector<std::size_t> RingIndex::query(const Rect& rect) const {
  std::vector<std::size_t> out;
  if (cells_.empty()) return out;
  auto cell_of = [this](double v, double origin, int n) {
    return std::clamp(static_cast<int>(std::floor((v - origin) / cell_)), 0, n - 1);
  };
  const int cx0 = cell_of(rect.x0 - kSlack, x0_, nx_);
  const int cx1 = cell_of(rect.x1 + kSlack, x0_, nx_);
  const int cy0 = cell_of(rect.y0 - kSlack, y0_, ny_);
  const int cy1 = cell_of(rect.y1 + kSlack, y0_, ny_);
  for (int cy = cy0; cy <= cy1; ++cy)
    for (int cx = cx0; cx <= cx1; ++cx)
      for (std::size_t k : cells_[static_cast<std::size_t>(cy) * nx_ + cx])
        out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [&](std::size_t k) { return !annulus_intersects((*rings_)[k], shape_, rect); });
  return out;
}

std::vector<std::size_t> ring_index(const std::vector<RingParams>& rings, Shape shape,
                                    const Rect& rect) {
  return RingIndex(rings, shape).query(rect);
}

HeightField evaluate_field(const std::vector<RingParams>& rings, Shape shape,
                           Interaction interaction, const Viewport& viewport,
                           const EvalOptions& options) {
  viewport.validate();
  if (options.tile_px < 1) fail(ErrorCode::invalid_argument, "tile size must be positive");
  if (options.threads < 1) fail(ErrorCode::invalid_argument, "threads must be at least 1");
  const int w = viewport.width_px;
  const int h = viewport.height_px;
  const int t = options.tile_px;
  const int tiles_x = (w + t - 1) / t;
  const int tiles_y = (h + t - 1) / t;
  const double s = viewport.pixel_mm();
  const RingIndex index(rings, shape);
  std::vector<double> data(static_cast<std::size_t>(w) * h, 0.0);

  detail::parallel_for(
      static_cast<std::size_t>(tiles_x) * tiles_y, options.threads, [&](std::size_t tile) {
        const int px0 = static_cast<int>(tile % tiles_x) * t;
        const int py0 = static_cast<int>(tile / tiles_x) * t;
        const int px1 = std::min(w, px0 + t);  // exclusive
        const int py1 = std::min(h, py0 + t);
        const Rect rect{viewport.x_at(px0), viewport.y_at(py0), viewport.x_at(px1 - 1),
                        viewport.y_at(py1 - 1)};
        for (std::size_t k : index.query(rect)) {
          const RingParams& ring = rings[k];
          const double ro = support_outer_radius(ring, shape);
          const double ri = support_inner_radius(ring, shape);
          // Pixel rows and columns that can reach the annulus, padded by one.
          const int ya = std::max(py0, static_cast<int>(std::floor((ring.cy - ro - viewport.y0_mm) / s - 0.5)) - 1);
          const int yb = std::min(py1 - 1, static_cast<int>(std::ceil((ring.cy + ro - viewport.y0_mm) / s - 0.5)) + 1);
          for (int py = ya; py <= yb; ++py) {
            const double y = viewport.y_at(py);
            const double dy = y - ring.cy;
            const double reach2 = ro * ro - dy * dy;
            if (reach2 < -2.0 * s * ro) continue;
            const double reach = std::sqrt(std::max(0.0, reach2));
            const int xa = std::max(px0, static_cast<int>(std::floor((ring.cx - reach - viewport.x0_mm) / s - 0.5)) - 1);
            const int xb = std::min(px1 - 1, static_cast<int>(std::ceil((ring.cx + reach - viewport.x0_mm) / s - 0.5)) + 1);
            // Columns strictly inside the hole, shrunk by one pixel for safety.
            int ha = xb + 1;
            int hb = xb;
            if (ri > 0.0 && dy * dy < ri * ri) {
              const double hole = std::sqrt(ri * ri - dy * dy);
              ha = static_cast<int>(std::ceil((ring.cx - hole - viewport.x0_mm) / s - 0.5)) + 1;
              hb = static_cast<int>(std::floor((ring.cx + hole - viewport.x0_mm) / s - 0.5)) - 1;
            }
            double* row = data.data() + static_cast<std::size_t>(py) * w;
            for (int px = xa; px <= xb; ++px) {
              if (px >= ha && px <= hb) {
                px = hb;
                continue;
              }
              const double x = viewport.x_at(px);
              if (!in_support(ring, shape, x, y)) continue;
              const double v = ring_value(ring, x, y, shape);
              double& f = row[px];
              switch (interaction) {
                case Interaction::min: f = std::min(f, v); break;
                case Interaction::latest: f = v; break;
                case Interaction::convex: {
                  const double a = convex_weight(ring, x, y, shape);
                  f = a * v + (1.0 - a) * f;
                  break;
                }
              }
            }
          }
        }
      });
  return HeightField(w, h, viewport.spacing_um, std::move(data));
}

HeightField adapt_height(const HeightField& field, double target_mean, double target_variance) {
  if (!(target_variance >= 0.0) || !std::isfinite(target_variance) || !std::isfinite(target_mean))
    fail(ErrorCode::invalid_argument, "target mean and variance must be finite, variance >= 0");
  const auto st = stats(field);
  if (!(st.variance > 0.0))
    fail(ErrorCode::invalid_argument, "cannot adapt the height of a constant field");
  const double gain = std::sqrt(target_variance / st.variance);
  std::vector<double> out(field.values().begin(), field.values().end());
  for (double& v : out) v = (v - st.mean) * gain + target_mean;
  return HeightField(field.width(), field.height(), field.spacing_um(), std::move(out));
}

MillResult render(const MillConfig& cfg, const Viewport& viewport, const EvalOptions& options) {
  const auto path = tool_path(cfg, viewport);
  const auto rings = sample_rings(path, cfg, RandomStream(cfg.seed));
  MillResult out{evaluate_field(rings, cfg.shape, cfg.interaction, viewport, options),
                 rings.size(), 0};
  out.rings_visible = RingIndex(rings, cfg.shape).query(pixel_center_rect(viewport)).size();
  return out;
}

}  // namespace surftex::mill
