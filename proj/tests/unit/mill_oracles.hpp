#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "surftex/mill/field.hpp"
#include "surftex/mill/rings.hpp"

namespace testutil {

// Root of L(phi) = s by bisection; L is strictly increasing.
inline double bisect_arc(double a, double s) {
  double lo = 0.0, hi = 1.0;
  while (surftex::mill::spiral_arc_length(hi, a) < s) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (surftex::mill::spiral_arc_length(mid, a) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Re-derives a ring value from its raw parameters without the library's band
// helper.
inline double ring_value_from_scratch(const surftex::mill::RingParams& g, double x, double y,
                                      surftex::mill::Shape shape) {
  using surftex::mill::Shape;
  const double dist = std::hypot(x - g.cx, y - g.cy);
  const double r = g.r;
  const double pi2 = std::numbers::pi / 2;
  const double proj = std::cos(g.theta) * (x - g.cx) + std::sin(g.theta) * (y - g.cy);
  auto plane = [&](double l, double h) { return (h - l) / (2 * r) * proj + (h + l) / 2; };
  double s = 0.0, t = 0.0;
  bool in_pk = false;
  if (g.w_minus > 0 && dist >= r - g.w_minus && dist <= r) {
    const double d = (dist - r + g.w_minus / 2) * 2 / g.w_minus;
    s = shape == Shape::indicator ? -1.0 : -std::cos(pi2 * d);
    t = plane(g.l_minus, g.h_minus);
    in_pk = true;
  } else if (g.w_minus > 0 && g.w_plus_i > 0 && dist < r - g.w_minus &&
             dist >= r - g.w_minus - g.w_plus_i) {
    const double d = (dist - (r - g.w_minus - g.w_plus_i / 2)) * 2 / g.w_plus_i;
    s = shape == Shape::bump ? std::cos(pi2 * d) : 0.0;
    t = plane(g.l_plus_i, g.h_plus_i);
    in_pk = shape == Shape::bump;
  } else if (g.w_minus > 0 && g.w_plus_o > 0 && dist > r && dist <= r + g.w_plus_o) {
    const double d = (dist - (r + g.w_plus_o / 2)) * 2 / g.w_plus_o;
    s = shape == Shape::bump ? std::cos(pi2 * d) : 0.0;
    t = plane(g.l_plus_o, g.h_plus_o);
    in_pk = shape == Shape::bump;
  }
  double n = 0.0;
  if (in_pk && !g.noise.empty()) {
    const double ang = std::atan2(y - g.cy, x - g.cx);
    for (const auto& term : g.noise) n += std::sin(term.tau * ang + term.xi);
    n /= static_cast<double>(g.noise.size());
  }
  return s * t + n;
}

// Pixel-by-pixel evaluation over every ring, no spatial index or tiling.
inline std::vector<double> brute_force_field(const std::vector<surftex::mill::RingParams>& rings,
                                             surftex::mill::Shape shape,
                                             surftex::mill::Interaction inter,
                                             const surftex::mill::Viewport& v) {
  using namespace surftex::mill;
  std::vector<double> out(static_cast<std::size_t>(v.width_px) * v.height_px, 0.0);
  for (int py = 0; py < v.height_px; ++py)
    for (int px = 0; px < v.width_px; ++px) {
      const double x = v.x_at(px), y = v.y_at(py);
      double f = 0.0;
      for (const auto& g : rings) {
        if (!in_support(g, shape, x, y)) continue;
        const double val = ring_value(g, x, y, shape);
        switch (inter) {
          case Interaction::min: f = std::min(f, val); break;
          case Interaction::latest: f = val; break;
          case Interaction::convex: {
            const double a = convex_weight(g, x, y, shape);
            f = a * val + (1 - a) * f;
            break;
          }
        }
      }
      out[static_cast<std::size_t>(py) * v.width_px + px] = f;
    }
  return out;
}

}  // namespace testutil

namespace testutil {

// Fundamental period of a 1-D profile in samples: first local minimum of the
// average magnitude difference function below 20 % of its maximum. Lags run in
// steps of 1/20 sample with linear interpolation between samples, so periods
// that are not whole pixels still give a deep minimum.
inline double amdf_period(const std::vector<double>& p) {
  const int n = static_cast<int>(p.size());
  const int steps = 20;
  const int max_lag = n / 2 * steps;
  std::vector<double> d(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int l = steps; l <= max_lag; ++l) {
    const double lag = static_cast<double>(l) / steps;
    const int whole = l / steps;
    const double frac = lag - whole;
    double s = 0.0;
    int count = 0;
    for (int i = 0; i + whole + 1 < n; ++i, ++count)
      s += std::abs((1 - frac) * p[i + whole] + frac * p[i + whole + 1] - p[i]);
    d[l] = s / count;
  }
  double dmax = 0.0;
  for (double v : d) dmax = std::max(dmax, v);
  for (int l = steps + 1; l < max_lag; ++l)
    if (d[l] < 0.2 * dmax && d[l] <= d[l - 1] && d[l] <= d[l + 1])
      return static_cast<double>(l) / steps;
  return 0.0;
}

}  // namespace testutil
