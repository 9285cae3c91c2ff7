#include "surftex/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "surftex/error.hpp"
#include "surftex/spectral.hpp"

namespace surftex {

PhaseField sample_phase(int width, int height, RandomStream& rng) {
  if (width < 1 || height < 1) fail(ErrorCode::invalid_argument, "phase grid must be non-empty");
  PhaseField phase{width, height, {}};
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  phase.theta.assign(n, 0.0);
  std::vector<bool> visited(n, false);

  for (int r = 0; r < height; ++r) {
    for (int q = 0; q < width; ++q) {
      const auto i = static_cast<std::size_t>(r) * width + q;
      if (visited[i]) continue;
      const int cq = (width - q) % width;
      const int cr = (height - r) % height;
      const auto j = static_cast<std::size_t>(cr) * width + cq;
      visited[i] = visited[j] = true;
      if (i == j) {
        phase.theta[i] = (i == 0) ? 0.0 : (rng.coin() ? std::numbers::pi : 0.0);
        continue;
      }
      const double t = rng.phase();
      phase.theta[i] = t;
      phase.theta[j] = (t == std::numbers::pi) ? std::numbers::pi : -t;
    }
  }
  return phase;
}

HeightField apply_phase(const HeightField& input, const PhaseField& phase) {
  if (phase.width != input.width() || phase.height != input.height())
    fail(ErrorCode::size_mismatch, "phase grid does not match input");
  auto spectrum = forward(input);
  for (std::size_t i = 0; i < spectrum.coeffs.size(); ++i)
    spectrum.coeffs[i] *= std::polar(1.0, phase.theta[i]);
  return inverse_real(spectrum, input.spacing_um());
}

HeightField rpn(const HeightField& input, RandomStream& rng) {
  return apply_phase(input, sample_phase(input.width(), input.height(), rng));
}

HeightField adsn(const HeightField& input, RandomStream& rng) {
  const double mean = stats(input).mean;
  const double norm = 1.0 / std::sqrt(static_cast<double>(input.size()));

  std::vector<std::complex<double>> spot(input.size());
  std::transform(input.values().begin(), input.values().end(), spot.begin(),
                 [&](double v) { return std::complex<double>((v - mean) * norm, 0.0); });
  std::vector<std::complex<double>> noise(input.size());
  for (auto& c : noise) c = rng.normal();

  dft2d(spot, input.width(), input.height(), false);
  dft2d(noise, input.width(), input.height(), false);
  for (std::size_t i = 0; i < spot.size(); ++i) spot[i] *= noise[i];
  dft2d(spot, input.width(), input.height(), true);

  std::vector<double> out(input.size());
  std::transform(spot.begin(), spot.end(), out.begin(),
                 [mean](const std::complex<double>& c) { return mean + c.real(); });
  return HeightField(input.width(), input.height(), input.spacing_um(), std::move(out));
}

double blend_ramp(int distance, int band) {
  if (band <= 0 || distance >= band) return 1.0;
  if (band == 1) return 0.5;
  const double slope = 2.0 * std::log(99.0) / (band - 1);
  const double mid = 0.5 * (band - 1);
  return 1.0 / (1.0 + std::exp(-slope * (distance - mid)));
}

HeightField extend_input(const HeightField& input, int target_w, int target_h,
                         const ExtendOptions& options) {
  const int w = input.width();
  const int h = input.height();
  if (target_w < w || target_h < h)
    fail(ErrorCode::invalid_argument, "extension target smaller than input");

  if (target_w == w && target_h == h) return input;

  const auto s = stats(input);
  const int left = (target_w - w) / 2;
  const int top = (target_h - h) / 2;
  const bool pad_left = left > 0;
  const bool pad_right = target_w - w - left > 0;
  const bool pad_top = top > 0;
  const bool pad_bottom = target_h - h - top > 0;
  const int band = std::clamp(options.blend_band, 0, std::min(w, h) / 2);

  // Weight s(p) per input pixel: distance to the nearest padded side.
  std::vector<double> weight(input.size(), 1.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int d = band;
      if (pad_left) d = std::min(d, x);
      if (pad_right) d = std::min(d, w - 1 - x);
      if (pad_top) d = std::min(d, y);
      if (pad_bottom) d = std::min(d, h - 1 - y);
      weight[static_cast<std::size_t>(y) * w + x] = blend_ramp(d, band);
    }
  }

  // Blended deviation plus a band-only correction s(1-s) that restores a zero sum.
  std::vector<double> dev(input.size());
  double sum_dev = 0.0;
  double sum_corr = 0.0;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    dev[i] = weight[i] * (input.values()[i] - s.mean);
    sum_dev += dev[i];
    sum_corr += weight[i] * (1.0 - weight[i]);
  }
  if (sum_corr > 0.0) {
    const double kappa = sum_dev / sum_corr;
    for (std::size_t i = 0; i < dev.size(); ++i) dev[i] -= kappa * weight[i] * (1.0 - weight[i]);
  }
  double energy = 0.0;
  for (double d : dev) energy += d * d;
  const double target_n = static_cast<double>(target_w) * static_cast<double>(target_h);
  const double gain = energy > 0.0 ? std::sqrt(target_n * s.variance / energy) : 0.0;

  std::vector<double> out(static_cast<std::size_t>(target_n), s.mean);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out[static_cast<std::size_t>(y + top) * target_w + (x + left)] =
          s.mean + gain * dev[static_cast<std::size_t>(y) * w + x];
  return HeightField(target_w, target_h, input.spacing_um(), std::move(out));
}

}  // namespace surftex
