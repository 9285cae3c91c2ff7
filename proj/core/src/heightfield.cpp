#include "surftex/heightfield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "surftex/error.hpp"

namespace surftex {

HeightField::HeightField(int width, int height, double spacing_um, std::vector<double> data)
    : width_(width), height_(height), spacing_um_(spacing_um), data_(std::move(data)) {
  if (width < 1 || height < 1)
    fail(ErrorCode::invalid_argument,
         "height field needs positive dimensions, got " + std::to_string(width) + "x" +
             std::to_string(height));
  if (!(spacing_um > 0.0) || !std::isfinite(spacing_um))
    fail(ErrorCode::invalid_argument, "pixel spacing must be positive and finite");
  if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    fail(ErrorCode::size_mismatch, "data length " + std::to_string(data_.size()) +
                                       " does not match " + std::to_string(width) + "x" +
                                       std::to_string(height));
  if (!std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); }))
    fail(ErrorCode::non_finite, "height field contains NaN or Inf");
}

HeightField HeightField::filled(int width, int height, double spacing_um, double value) {
  const auto n = static_cast<std::size_t>(std::max(width, 0)) *
                 static_cast<std::size_t>(std::max(height, 0));
  return HeightField(width, height, spacing_um, std::vector<double>(n, value));
}

HeightField HeightField::with_spacing(double spacing_um) const {
  return HeightField(width_, height_, spacing_um, data_);
}

SummaryStats stats(const HeightField& field) {
  const auto v = field.values();
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  double lo = v.front();
  double hi = v.front();
  for (double x : v) {
    sum += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  // Rounding can push the mean a hair outside [min, max] for constant data.
  const double mean = std::clamp(sum / n, lo, hi);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return SummaryStats{mean, ss / n, lo, hi};
}

HeightField crop(const HeightField& field, int x0, int y0, int w, int h) {
  if (w < 1 || h < 1 || x0 < 0 || y0 < 0 || x0 + w > field.width() || y0 + h > field.height())
    fail(ErrorCode::out_of_range, "crop window (" + std::to_string(x0) + "," +
                                      std::to_string(y0) + "," + std::to_string(w) + "," +
                                      std::to_string(h) + ") outside " +
                                      std::to_string(field.width()) + "x" +
                                      std::to_string(field.height()));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) out.push_back(field.at(x0 + x, y0 + y));
  return HeightField(w, h, field.spacing_um(), std::move(out));
}

int downsampled_extent(int size, double factor) {
  // Slack keeps exact ratios such as 5.25/1.75 from rounding up an extra pixel.
  return static_cast<int>(std::ceil(static_cast<double>(size) / factor - 1e-9));
}

HeightField downsample_nn(const HeightField& field, double factor) {
  if (!std::isfinite(factor) || factor < 1.0 - 1e-12)
    fail(ErrorCode::invalid_argument,
         "down-sampling factor must be >= 1 (super-resolution is not supported)");
  if (factor <= 1.0) return field;
  const int ow = std::max(1, downsampled_extent(field.width(), factor));
  const int oh = std::max(1, downsampled_extent(field.height(), factor));
  auto source = [factor](int i, int limit) {
    const auto s = static_cast<long>(std::lround(static_cast<double>(i) * factor));
    return static_cast<int>(std::clamp<long>(s, 0, limit - 1));
  };
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(ow) * static_cast<std::size_t>(oh));
  for (int y = 0; y < oh; ++y) {
    const int sy = source(y, field.height());
    for (int x = 0; x < ow; ++x) out.push_back(field.at(source(x, field.width()), sy));
  }
  return HeightField(ow, oh, field.spacing_um() * factor, std::move(out));
}

}  // namespace surftex
