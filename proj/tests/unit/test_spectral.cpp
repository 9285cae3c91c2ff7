#include <gtest/gtest.h>

#include <fstream>

#include "surftex/spectral.hpp"
#include "test_util.hpp"

using namespace surftex;

TEST(Spectral, ForwardMatchesNaiveDft) {
  const auto f = testutil::random_field(6, 5, 1);
  const auto naive = testutil::naive_dft(f);
  const auto fast = forward(f);
  ASSERT_EQ(fast.coeffs.size(), naive.size());
  for (std::size_t i = 0; i < naive.size(); ++i) EXPECT_LT(std::abs(fast.coeffs[i] - naive[i]), 1e-10);
}

TEST(Spectral, InverseRoundTrip) {
  const auto f = testutil::random_field(16, 9, 2, 3.0);
  const auto g = inverse_real(forward(f), 3.0);
  EXPECT_LT(testutil::max_abs_diff(f, g), 1e-12);
  EXPECT_EQ(g.spacing_um(), 3.0);
}

TEST(Spectral, AutocorrelationMatchesCircularCorrelation) {
  const int w = 7, h = 6;
  const auto f = testutil::random_field(w, h, 3, 1.0, 2.0, 1.0);
  const double mean = stats(f).mean;
  const auto acf = autocorrelation(f);
  ASSERT_EQ(acf.width(), w);
  ASSERT_EQ(acf.height(), h);
  // Lag 0 sits at (w/2, h/2).
  for (int ly = -h / 2; ly < h - h / 2; ++ly)
    for (int lx = -w / 2; lx < w - w / 2; ++lx) {
      double s = 0.0;
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
          s += (f.at(x, y) - mean) * (f.at((x + lx + w) % w, (y + ly + h) % h) - mean);
      EXPECT_NEAR(acf.at(lx + w / 2, ly + h / 2), s / (w * h), 1e-12);
    }
  EXPECT_NEAR(acf.at(w / 2, h / 2), stats(f).variance, 1e-12);
}

TEST(Spectral, AutocorrelationOfConstantIsZero) {
  const auto acf = autocorrelation(HeightField::filled(8, 8, 1.0, 4.0));
  for (double v : acf.values()) EXPECT_EQ(v, 0.0);
}

TEST(Spectral, PeriodicDecompositionSumsToInput) {
  const auto f = testutil::random_field(20, 13, 4, 1.0, 1.0, 3.0);
  const auto ps = periodic_decompose(f);
  for (std::size_t i = 0; i < f.size(); ++i)
    EXPECT_NEAR(ps.periodic.values()[i] + ps.smooth.values()[i], f.values()[i], 1e-9);
  EXPECT_NEAR(stats(ps.periodic).mean, stats(f).mean, 1e-9);
  EXPECT_NEAR(stats(ps.smooth).mean, 0.0, 1e-12);
}

TEST(Spectral, MatchingBordersAreUnchanged) {
  // Opposite borders agree, so the boundary jumps vanish.
  const auto f = testutil::from_fn(32, 16, 1.0, [](int x, int y) {
    return std::sin(2 * std::numbers::pi * 3 * x / 31.0) + std::cos(2 * std::numbers::pi * y / 15.0);
  });
  const auto ps = periodic_decompose(f);
  EXPECT_LT(testutil::max_abs_diff(ps.periodic, f), 1e-8);
}

TEST(Spectral, RampBorderEnergyDropsTenfold) {
  const auto ramp = testutil::from_fn(64, 48, 1.0, [](int x, int y) { return 0.5 * x + 0.25 * y; });
  const double before = border_jump_energy(ramp);
  const double after = border_jump_energy(periodic_decompose(ramp).periodic);
  EXPECT_GT(before, 0.0);
  EXPECT_LE(after * 10.0, before);
}

TEST(Spectral, HistogramMatchesNaiveBinning) {
  const auto f = testutil::random_field(40, 30, 5);
  const int nbins = 17;
  const auto hist = histogram(f, nbins);
  ASSERT_EQ(hist.counts.size(), 17u);
  ASSERT_EQ(hist.bin_edges.size(), 18u);
  std::uint64_t total = 0;
  for (int k = 0; k < nbins; ++k) {
    std::uint64_t count = 0;
    for (double v : f.values()) {
      const bool last = k == nbins - 1;
      if (v >= hist.bin_edges[k] && (v < hist.bin_edges[k + 1] || (last && v <= hist.bin_edges[k + 1])))
        ++count;
    }
    EXPECT_EQ(hist.counts[k], count) << "bin " << k;
    total += hist.counts[k];
  }
  EXPECT_EQ(total, f.size());
  EXPECT_EQ(hist.bin_edges.front(), stats(f).min);
  EXPECT_EQ(hist.bin_edges.back(), stats(f).max);
}

TEST(Spectral, HistogramOfConstantHasOneOccupiedBin) {
  const auto hist = histogram(HeightField::filled(4, 4, 1.0, 2.0), 8);
  EXPECT_EQ(hist.counts[0], 16u);
  for (std::size_t k = 1; k < hist.counts.size(); ++k) EXPECT_EQ(hist.counts[k], 0u);
}

TEST(Spectral, HistogramCsvLayout) {
  const auto dir = testutil::temp_dir("hist_csv");
  const auto hist = histogram(testutil::random_field(8, 8, 6), 4);
  write_histogram_csv(hist, dir / "h.csv");
  std::ifstream in(dir / "h.csv");
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "edge_low,edge_high,count");
  int rows = 0;
  std::uint64_t total = 0;
  while (std::getline(in, line)) {
    double lo = 0, hi = 0;
    unsigned long long c = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%llu", &lo, &hi, &c), 3);
    EXPECT_EQ(lo, hist.bin_edges[rows]);
    EXPECT_EQ(hi, hist.bin_edges[rows + 1]);
    total += c;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(total, 64u);
}

TEST(Spectral, MatchHistogramTakesReferenceValues) {
  const auto src = testutil::random_field(10, 10, 7);
  const auto ref = testutil::random_field(10, 10, 8, 1.0, 5.0, 2.0);
  const auto out = match_histogram(src, ref);
  std::vector<double> a(out.values().begin(), out.values().end());
  std::vector<double> b(ref.values().begin(), ref.values().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  // Rank order of the source is kept.
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = 0; j < src.size(); ++j)
      if (src.values()[i] < src.values()[j]) ASSERT_LE(out.values()[i], out.values()[j]);
}
