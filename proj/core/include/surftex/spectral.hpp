#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "surftex/heightfield.hpp"

namespace surftex {

/// Unnormalized 2D DFT of a field. Coefficient (q, r) sits at index
/// r * width + q, so the DC term is at (0, 0) and frequency -xi lives at
/// ((width - q) % width, (height - r) % height).
struct SpectralField {
  int width = 0;
  int height = 0;
  std::vector<std::complex<double>> coeffs;

  std::complex<double>& at(int q, int r) {
    return coeffs[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(q)];
  }
  const std::complex<double>& at(int q, int r) const {
    return coeffs[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(q)];
  }
};

SpectralField forward(const HeightField& field);

/// Inverse DFT (with the 1/(M*N) factor). The imaginary part is dropped;
/// for Hermitian input it is pure rounding noise.
HeightField inverse_real(const SpectralField& spectrum, double spacing_um);

/// In-place 2D DFT on a row-major width x height complex grid.
/// `inverse` applies the conjugate kernel and the 1/(M*N) normalization.
void dft2d(std::vector<std::complex<double>>& grid, int width, int height, bool inverse);

/// IFFT(|FFT(f - mean)|^2) / (M*N), shifted so lag (0, 0) lands on pixel
/// (width/2, height/2). Lag 0 equals the biased variance.
HeightField autocorrelation(const HeightField& field);

struct PeriodicSmooth {
  HeightField periodic;
  HeightField smooth;
};

/// Periodic-plus-smooth split: periodic + smooth == field, the smooth part has
/// zero mean and absorbs the wrap-around discontinuities.
PeriodicSmooth periodic_decompose(const HeightField& field);

/// Sum of squared jumps across the wrap-around borders (left/right columns
/// and top/bottom rows).
double border_jump_energy(const HeightField& field);

struct Histogram {
  std::vector<double> bin_edges;  // counts.size() + 1 entries
  std::vector<std::uint64_t> counts;
};

/// Equal-width bins over [min, max]; the maximum lands in the last bin.
/// A constant field gets unit-width bins starting at its value.
Histogram histogram(const HeightField& field, int nbins);

/// CSV with header `edge_low,edge_high,count`.
void write_histogram_csv(const Histogram& hist, const std::filesystem::path& path);

/// Rank transplant: the pixel of rank k in `source` (ties broken by row-major
/// scan order) receives the k-th smallest value of `reference`.
HeightField match_histogram(const HeightField& source, const HeightField& reference);

}  // namespace surftex
