#include "surftex/mill/rings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "surftex/error.hpp"

namespace surftex::mill {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double plane(const RingParams& ring, double low, double high, double x, double y) noexcept {
  return (high - low) / (2.0 * ring.r) *
             (std::cos(ring.theta) * (x - ring.cx) + std::sin(ring.theta) * (y - ring.cy)) +
         0.5 * (high + low);
}

// Normalized distance to the middle circle of a band of width w ending at outer.
double normalized(double dist, double outer, double w) noexcept {
  return (dist - outer + 0.5 * w) * 2.0 / w;
}

bool support_band(Band b, Shape shape) noexcept {
  return b == Band::indentation || (shape == Shape::bump && b != Band::none);
}

}  // namespace

bool has_support(const RingParams& ring) noexcept { return ring.w_minus > 0.0; }

Band band_at(const RingParams& ring, double dist) noexcept {
  if (!has_support(ring)) return Band::none;
  const double r = ring.r;
  const double inner_edge = r - ring.w_minus;
  if (dist >= inner_edge && dist <= r) return Band::indentation;
  if (ring.w_plus_i > 0.0 && dist < inner_edge && dist >= inner_edge - ring.w_plus_i)
    return Band::inner;
  if (ring.w_plus_o > 0.0 && dist > r && dist <= r + ring.w_plus_o) return Band::outer;
  return Band::none;
}

double support_inner_radius(const RingParams& ring, Shape shape) noexcept {
  const double base = ring.r - ring.w_minus;
  return shape == Shape::bump ? std::max(0.0, base - ring.w_plus_i) : base;
}

double support_outer_radius(const RingParams& ring, Shape shape) noexcept {
  return shape == Shape::bump ? ring.r + ring.w_plus_o : ring.r;
}

bool in_support(const RingParams& ring, Shape shape, double x, double y) noexcept {
  return support_band(band_at(ring, std::hypot(x - ring.cx, y - ring.cy)), shape);
}

double shape_value(const RingParams& ring, double x, double y, Shape shape) noexcept {
  const double dist = std::hypot(x - ring.cx, y - ring.cy);
  const Band b = band_at(ring, dist);
  switch (b) {
    case Band::none: return 0.0;
    case Band::indentation:
      if (shape == Shape::indicator) return -1.0;
      return -std::cos(kHalfPi * normalized(dist, ring.r, ring.w_minus));
    case Band::inner:
      if (shape != Shape::bump) return 0.0;
      return std::cos(kHalfPi * normalized(dist, ring.r - ring.w_minus, ring.w_plus_i));
    case Band::outer:
      if (shape != Shape::bump) return 0.0;
      return std::cos(kHalfPi * normalized(dist, ring.r + ring.w_plus_o, ring.w_plus_o));
  }
  return 0.0;
}

double tilt_value(const RingParams& ring, double x, double y) noexcept {
  switch (band_at(ring, std::hypot(x - ring.cx, y - ring.cy))) {
    case Band::none: return 0.0;
    case Band::indentation: return plane(ring, ring.l_minus, ring.h_minus, x, y);
    case Band::inner: return plane(ring, ring.l_plus_i, ring.h_plus_i, x, y);
    case Band::outer: return plane(ring, ring.l_plus_o, ring.h_plus_o, x, y);
  }
  return 0.0;
}

double noise_value(const RingParams& ring, double x, double y, Shape shape) noexcept {
  if (ring.noise.empty() || !in_support(ring, shape, x, y)) return 0.0;
  const double angle = std::atan2(y - ring.cy, x - ring.cx);
  double sum = 0.0;
  for (const auto& t : ring.noise) sum += std::sin(t.tau * angle + t.xi);
  return sum / static_cast<double>(ring.noise.size());
}

double ring_value(const RingParams& ring, double x, double y, Shape shape) noexcept {
  return shape_value(ring, x, y, shape) * tilt_value(ring, x, y) + noise_value(ring, x, y, shape);
}

double convex_weight(const RingParams& ring, double x, double y, Shape shape) noexcept {
  if (!in_support(ring, shape, x, y)) return 0.0;
  return std::clamp(plane(ring, ring.a, ring.b, x, y), 0.0, 1.0);
}

std::vector<RingParams> sample_rings(const ToolPath& path, const MillConfig& cfg,
                                     const RandomStream& rng) {
  cfg.validate();
  const double r = cfg.radius_mm();
  const auto centers = rng.substream("centers");
  const auto params = rng.substream("rings");
  const auto noise = rng.substream("noise");

  // Cholesky factor of the center covariance.
  const auto& s = cfg.sigma_c;
  const double l11 = std::sqrt(s.xx);
  const double l21 = l11 > 0.0 ? s.xy / l11 : 0.0;
  const double l22 = std::sqrt(std::max(0.0, s.yy - l21 * l21));

  const std::size_t n = path.points.size();
  std::vector<RingParams> rings(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = path.points[k];
    RingParams& ring = rings[k];
    ring.index = k;
    ring.r = r;
    ring.theta = p.theta;

    auto cs = centers.substream(static_cast<std::uint64_t>(k));
    const double z1 = cs.normal();
    const double z2 = cs.normal();
    ring.cx = p.x + l11 * z1;
    ring.cy = p.y + l21 * z1 + l22 * z2;

    auto ps = params.substream(static_cast<std::uint64_t>(k));
    ring.w_minus = std::clamp(ps.normal(cfg.w_minus.mean, cfg.w_minus.sigma), 0.0, r);
    ring.w_plus_i =
        std::clamp(ps.normal(cfg.w_plus_i.mean, cfg.w_plus_i.sigma), 0.0, r - ring.w_minus);
    ring.w_plus_o = std::max(0.0, ps.normal(cfg.w_plus_o.mean, cfg.w_plus_o.sigma));
    ring.l_minus = ps.normal(cfg.mu_l_minus(), cfg.sigma_l_minus);
    ring.h_minus = ps.normal(cfg.mu_h_minus(), cfg.sigma_h_minus);
    ring.l_plus_i = ps.normal(cfg.l_plus_i.mean, cfg.l_plus_i.sigma);
    ring.h_plus_i = ps.normal(cfg.h_plus_i.mean, cfg.h_plus_i.sigma);
    ring.l_plus_o = ps.normal(cfg.l_plus_o.mean, cfg.l_plus_o.sigma);
    ring.h_plus_o = ps.normal(cfg.h_plus_o.mean, cfg.h_plus_o.sigma);
    ring.a = ps.uniform(cfg.a_min, cfg.a_max);
    ring.b = ps.uniform(cfg.b_min, cfg.b_max);

    auto ns = noise.substream(static_cast<std::uint64_t>(k));
    const auto count = cfg.noise_lambda > 0.0 ? ns.poisson(cfg.noise_lambda) : 0;
    ring.noise.resize(count);
    for (auto& t : ring.noise) {
      t.tau = cfg.noise_tau > 0.0 ? static_cast<int>(ns.poisson(cfg.noise_tau)) : 0;
      t.xi = ns.phase();
    }
  }

  // Pick ceil(eps n) temporal positions and shuffle the rings among them.
  const auto m = static_cast<std::size_t>(std::ceil(cfg.epsilon * static_cast<double>(n) - 1e-12));
  if (m >= 2) {
    auto os = rng.substream("order");
    std::vector<std::size_t> slots(n);
    for (std::size_t k = 0; k < n; ++k) slots[k] = k;
    for (std::size_t k = 0; k < m; ++k)
      std::swap(slots[k], slots[k + os.uniform_index(n - k)]);
    slots.resize(m);
    std::sort(slots.begin(), slots.end());
    std::vector<std::size_t> perm(slots);
    for (std::size_t k = m - 1; k > 0; --k) std::swap(perm[k], perm[os.uniform_index(k + 1)]);
    std::vector<RingParams> chosen;
    chosen.reserve(m);
    for (std::size_t k = 0; k < m; ++k) chosen.push_back(rings[perm[k]]);
    for (std::size_t k = 0; k < m; ++k) rings[slots[k]] = std::move(chosen[k]);
  }
  return rings;
}

}  // namespace surftex::mill
