#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace surftex {

/// Rectangular grid of surface heights in micrometres, stored row-major.
///
/// Pixel (x, y) is column x, row y. Pixels are square with side
/// `spacing_um()`. A constructed field always has width*height finite values
/// and a positive spacing; there is no way to mutate it in place.
class HeightField {
 public:
  HeightField(int width, int height, double spacing_um, std::vector<double> data);

  static HeightField filled(int width, int height, double spacing_um, double value);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double spacing_um() const noexcept { return spacing_um_; }
  std::size_t size() const noexcept { return data_.size(); }

  double at(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)];
  }
  std::span<const double> values() const noexcept { return data_; }

  /// Moves the samples out, leaving the field empty.
  std::vector<double> release() && noexcept { return std::move(data_); }

  HeightField with_spacing(double spacing_um) const;

  friend bool operator==(const HeightField&, const HeightField&) = default;

 private:
  int width_;
  int height_;
  double spacing_um_;
  std::vector<double> data_;
};

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;  // biased, divides by N
  double min = 0.0;
  double max = 0.0;
};

SummaryStats stats(const HeightField& field);

/// Window [x0, x0+w) x [y0, y0+h); throws out_of_range unless fully inside.
HeightField crop(const HeightField& field, int x0, int y0, int w, int h);

/// Nearest-neighbour down-sampling by factor >= 1.
///
/// Output size is ceil(size / factor) per axis; output pixel i samples source
/// index round(i * factor), clamped. Spacing is multiplied by the factor.
HeightField downsample_nn(const HeightField& field, double factor);

int downsampled_extent(int size, double factor);

/// `.hfld`: ASCII line "HFLD v1 <width> <height> <spacing_um>\n" followed by
/// width*height little-endian IEEE-754 binary32 samples, row-major. The
/// spacing is printed with 17 significant digits so it round-trips exactly.
void write_hfld(const HeightField& field, const std::filesystem::path& path);
HeightField read_hfld(const std::filesystem::path& path);

/// Whitespace-separated rows of numbers, one image row per line. Blank lines
/// and lines starting with '#' are skipped.
HeightField read_ascii_matrix(const std::filesystem::path& path, double spacing_um = 1.0);

}  // namespace surftex
