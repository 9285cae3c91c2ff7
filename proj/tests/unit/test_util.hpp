#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "surftex/heightfield.hpp"
#include "surftex/random.hpp"

namespace testutil {

inline surftex::HeightField random_field(int w, int h, std::uint64_t seed, double spacing = 1.0,
                                         double mean = 0.0, double sigma = 1.0) {
  surftex::RandomStream rng(seed);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (double& x : v) x = rng.normal(mean, sigma);
  return surftex::HeightField(w, h, spacing, std::move(v));
}

inline surftex::HeightField from_fn(int w, int h, double spacing, auto fn) {
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) v[static_cast<std::size_t>(y) * w + x] = fn(x, y);
  return surftex::HeightField(w, h, spacing, std::move(v));
}

// Textbook O(N^2) two-dimensional DFT, X(q,r) = sum f(x,y) e^{-2 pi i (qx/W + ry/H)}.
inline std::vector<std::complex<double>> naive_dft(const surftex::HeightField& f) {
  const int w = f.width(), h = f.height();
  std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r)
    for (int q = 0; q < w; ++q) {
      std::complex<double> s = 0.0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double ang = -2.0 * std::numbers::pi *
                             (static_cast<double>(q) * x / w + static_cast<double>(r) * y / h);
          s += f.at(x, y) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
      out[static_cast<std::size_t>(r) * w + q] = s;
    }
  return out;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const char* base = std::getenv("SURFTEX_TEST_TMP");
  auto dir = std::filesystem::path(base ? base : std::filesystem::temp_directory_path().string()) /
             ("surftex_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double max_abs_diff(const surftex::HeightField& a, const surftex::HeightField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace testutil
