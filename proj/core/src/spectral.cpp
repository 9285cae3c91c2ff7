#include "surftex/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "surftex/error.hpp"

namespace surftex {
namespace {

// The FFTW planner is not re-entrant; executing a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

}  // namespace

void dft2d(std::vector<std::complex<double>>& grid, int width, int height, bool inverse) {
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (grid.size() != n) fail(ErrorCode::size_mismatch, "dft2d grid size");
  // Always run on an fftw_malloc buffer: the plan FFTW_ESTIMATE picks depends
  // on alignment, and a fixed alignment keeps results bit-stable across runs.
  std::unique_ptr<fftw_complex, FftwFree> buf(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n)));
  if (!buf) throw std::bad_alloc();
  std::copy(grid.begin(), grid.end(), reinterpret_cast<std::complex<double>*>(buf.get()));

  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(height, width, buf.get(), buf.get(),
                            inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) fail(ErrorCode::invalid_argument, "FFTW could not plan transform");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const auto* out = reinterpret_cast<const std::complex<double>*>(buf.get());
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = out[i] * scale;
  } else {
    std::copy(out, out + n, grid.begin());
  }
}

SpectralField forward(const HeightField& field) {
  SpectralField s{field.width(), field.height(), {}};
  s.coeffs.assign(field.values().begin(), field.values().end());
  dft2d(s.coeffs, s.width, s.height, false);
  return s;
}

HeightField inverse_real(const SpectralField& spectrum, double spacing_um) {
  auto grid = spectrum.coeffs;
  dft2d(grid, spectrum.width, spectrum.height, true);
  std::vector<double> out(grid.size());
  std::transform(grid.begin(), grid.end(), out.begin(),
                 [](const std::complex<double>& c) { return c.real(); });
  return HeightField(spectrum.width, spectrum.height, spacing_um, std::move(out));
}

HeightField autocorrelation(const HeightField& field) {
  const int w = field.width();
  const int h = field.height();
  const double mean = stats(field).mean;
  std::vector<std::complex<double>> grid(field.size());
  std::transform(field.values().begin(), field.values().end(), grid.begin(),
                 [mean](double v) { return std::complex<double>(v - mean, 0.0); });
  dft2d(grid, w, h, false);
  for (auto& c : grid) c = std::norm(c);
  dft2d(grid, w, h, true);

  const double norm = 1.0 / static_cast<double>(field.size());
  std::vector<double> out(field.size());
  for (int y = 0; y < h; ++y) {
    const int ly = (y - h / 2 + h) % h;
    for (int x = 0; x < w; ++x) {
      const int lx = (x - w / 2 + w) % w;
      out[static_cast<std::size_t>(y) * w + x] =
          grid[static_cast<std::size_t>(ly) * w + lx].real() * norm;
    }
  }
  return HeightField(w, h, field.spacing_um(), std::move(out));
}

PeriodicSmooth periodic_decompose(const HeightField& field) {
  const int w = field.width();
  const int h = field.height();
  if (w < 2 || h < 2)
    fail(ErrorCode::invalid_argument, "periodic decomposition needs at least 2x2 pixels");

  // Boundary image: each border pixel receives the jump to its wrap-around
  // neighbour, interior pixels stay zero.
  std::vector<std::complex<double>> v(field.size(), 0.0);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  for (int y = 0; y < h; ++y) {
    const double jump = field.at(0, y) - field.at(w - 1, y);
    v[idx(0, y)] += jump;
    v[idx(w - 1, y)] -= jump;
  }
  for (int x = 0; x < w; ++x) {
    const double jump = field.at(x, 0) - field.at(x, h - 1);
    v[idx(x, 0)] += jump;
    v[idx(x, h - 1)] -= jump;
  }

  dft2d(v, w, h, false);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int r = 0; r < h; ++r) {
    const double cy = 2.0 * std::cos(two_pi * r / h);
    for (int q = 0; q < w; ++q) {
      if (q == 0 && r == 0) {
        v[0] = 0.0;
        continue;
      }
      v[idx(q, r)] /= 4.0 - 2.0 * std::cos(two_pi * q / w) - cy;
    }
  }
  dft2d(v, w, h, true);

  std::vector<double> smooth(field.size());
  std::vector<double> periodic(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    smooth[i] = v[i].real();
    periodic[i] = field.values()[i] - smooth[i];
  }
  return {HeightField(w, h, field.spacing_um(), std::move(periodic)),
          HeightField(w, h, field.spacing_um(), std::move(smooth))};
}

double border_jump_energy(const HeightField& field) {
  double e = 0.0;
  for (int y = 0; y < field.height(); ++y) {
    const double d = field.at(0, y) - field.at(field.width() - 1, y);
    e += d * d;
  }
  for (int x = 0; x < field.width(); ++x) {
    const double d = field.at(x, 0) - field.at(x, field.height() - 1);
    e += d * d;
  }
  return e;
}

Histogram histogram(const HeightField& field, int nbins) {
  if (nbins < 1) fail(ErrorCode::invalid_argument, "histogram needs at least one bin");
  const auto s = stats(field);
  const double lo = s.min;
  const double width = s.max > s.min ? (s.max - s.min) / nbins : 1.0 / nbins;

  Histogram hist;
  hist.bin_edges.resize(static_cast<std::size_t>(nbins) + 1);
  for (int k = 0; k <= nbins; ++k) hist.bin_edges[k] = lo + k * width;
  if (s.max > s.min) hist.bin_edges.back() = s.max;
  hist.counts.assign(static_cast<std::size_t>(nbins), 0);

  const auto& edges = hist.bin_edges;
  for (double v : field.values()) {
    auto k = static_cast<int>(std::floor((v - lo) / width));
    k = std::clamp(k, 0, nbins - 1);
    // Settle rounding at bin boundaries against the published edges.
    while (k > 0 && v < edges[k]) --k;
    while (k < nbins - 1 && v >= edges[k + 1]) ++k;
    ++hist.counts[k];
  }
  return hist;
}

void write_histogram_csv(const Histogram& hist, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::io, "cannot open " + path.string() + " for writing");
  out << "edge_low,edge_high,count\n";
  std::array<char, 96> line{};
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    std::snprintf(line.data(), line.size(), "%.17g,%.17g,", hist.bin_edges[k],
                  hist.bin_edges[k + 1]);
    out << line.data() << hist.counts[k] << '\n';
  }
  if (!out) fail(ErrorCode::io, "write to " + path.string() + " failed");
}

HeightField match_histogram(const HeightField& source, const HeightField& reference) {
  if (source.size() != reference.size())
    fail(ErrorCode::size_mismatch, "histogram matching needs equal pixel counts");
  std::vector<std::size_t> order(source.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto src = source.values();
  std::stable_sort(order.begin(), order.end(),
                   [&src](std::size_t a, std::size_t b) { return src[a] < src[b]; });
  std::vector<double> sorted_ref(reference.values().begin(), reference.values().end());
  std::sort(sorted_ref.begin(), sorted_ref.end());

  std::vector<double> out(source.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) out[order[rank]] = sorted_ref[rank];
  return HeightField(source.width(), source.height(), source.spacing_um(), std::move(out));
}

}  // namespace surftex
