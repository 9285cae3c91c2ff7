#include <gtest/gtest.h>

#include "surftex/error.hpp"
#include "surftex/spectral.hpp"
#include "surftex/stationary.hpp"
#include "test_util.hpp"

using namespace surftex;

TEST(Phase, HermitianSymmetric) {
  for (auto [w, h] : {std::pair{8, 8}, std::pair{7, 5}, std::pair{6, 9}}) {
    RandomStream rng(1);
    const auto p = sample_phase(w, h, rng);
    EXPECT_EQ(p.at(0, 0), 0.0);
    for (int r = 0; r < h; ++r)
      for (int q = 0; q < w; ++q) {
        const double t = p.at(q, r);
        const double c = p.at((w - q) % w, (h - r) % h);
        ASSERT_GT(t, -std::numbers::pi);
        ASSERT_LE(t, std::numbers::pi);
        if ((w - q) % w == q && (h - r) % h == r)
          ASSERT_TRUE(t == 0.0 || t == std::numbers::pi);
        else if (t != std::numbers::pi)
          ASSERT_EQ(c, -t);
      }
  }
}

TEST(Rpn, KeepsFourierModulusMeanAndAutocorrelation) {
  const auto f = testutil::random_field(32, 24, 2, 1.0, 4.0, 1.5);
  RandomStream rng(3);
  const auto g = rpn(f, rng);
  const auto a = forward(f), b = forward(g);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    EXPECT_NEAR(std::abs(b.coeffs[i]), std::abs(a.coeffs[i]), 1e-9 * std::max(1.0, std::abs(a.coeffs[i])));
  EXPECT_NEAR(stats(g).mean, stats(f).mean, 1e-9);
  EXPECT_LT(testutil::max_abs_diff(autocorrelation(f), autocorrelation(g)), 1e-9);
  EXPECT_GT(testutil::max_abs_diff(f, g), 0.1);
}

TEST(Rpn, DeterministicInSeed) {
  const auto f = testutil::random_field(16, 16, 4);
  RandomStream a(9), b(9), c(10);
  EXPECT_EQ(rpn(f, a), rpn(f, b));
  EXPECT_NE(rpn(f, a), rpn(f, c));
}

TEST(Rpn, ConstantInputStaysConstant) {
  const auto f = HeightField::filled(8, 8, 1.0, 3.0);
  RandomStream rng(1);
  const auto g = rpn(f, rng);
  for (double v : g.values()) EXPECT_NEAR(v, 3.0, 1e-12);
}

TEST(Adsn, MeanIsKeptInExpectationAndSpectrumMatches) {
  const auto f = testutil::random_field(8, 8, 5, 1.0, 2.0, 1.0);
  const double mean = stats(f).mean;
  std::vector<double> centered(f.values().begin(), f.values().end());
  for (double& v : centered) v -= mean;
  const auto target = forward(HeightField(8, 8, 1.0, centered));
  const int runs = 3000;
  std::vector<double> acc(64, 0.0);
  double mean_acc = 0.0;
  RandomStream root(6);
  for (int s = 0; s < runs; ++s) {
    auto rng = root.substream(static_cast<std::uint64_t>(s));
    const auto g = adsn(f, rng);
    mean_acc += stats(g).mean;
    std::vector<double> gc(g.values().begin(), g.values().end());
    for (double& v : gc) v -= mean;
    const auto spec = forward(HeightField(8, 8, 1.0, gc));
    for (int i = 0; i < 64; ++i) acc[i] += std::norm(spec.coeffs[i]);
  }
  EXPECT_NEAR(mean_acc / runs, mean, 0.05);
  // E|X|^2 = |F(f - mean)|^2; relative standard error of the mean of an
  // exponential variable is 1/sqrt(runs).
  for (int i = 1; i < 64; ++i) {
    const double expect = std::norm(target.coeffs[i]);
    EXPECT_NEAR(acc[i] / runs, expect, 5.0 * 1.5 * expect / std::sqrt(runs)) << "coefficient " << i;
  }
}

TEST(Adsn, OutputSizeAndSpacing) {
  const auto f = testutil::random_field(9, 6, 7, 2.5);
  RandomStream rng(1);
  const auto g = adsn(f, rng);
  EXPECT_EQ(g.width(), 9);
  EXPECT_EQ(g.height(), 6);
  EXPECT_EQ(g.spacing_um(), 2.5);
}

TEST(Extend, SameSizeReturnsInput) {
  const auto f = testutil::random_field(10, 8, 1);
  EXPECT_EQ(extend_input(f, 10, 8), f);
}

TEST(Extend, KeepsMeanAndVarianceAndEmbedsCentered) {
  const auto f = testutil::random_field(20, 16, 2, 1.0, 3.0, 2.0);
  const auto g = extend_input(f, 40, 30, {4});
  ASSERT_EQ(g.width(), 40);
  ASSERT_EQ(g.height(), 30);
  const auto sf = stats(f), sg = stats(g);
  EXPECT_NEAR(sg.mean, sf.mean, 1e-9);
  EXPECT_NEAR(sg.variance, sf.variance, 1e-9 * sf.variance);
  // Corners hold the mean; deep interior keeps the input shape up to the gain.
  EXPECT_NEAR(g.at(0, 0), sf.mean, 1e-12);
  EXPECT_NEAR(g.at(39, 29), sf.mean, 1e-12);
  const double d1 = g.at(10 + 10, 7 + 8) - g.at(10 + 9, 7 + 8);
  const double d0 = f.at(10, 8) - f.at(9, 8);
  const double d3 = g.at(10 + 12, 7 + 9) - g.at(10 + 8, 7 + 9);
  const double d2 = f.at(12, 9) - f.at(8, 9);
  EXPECT_NEAR(d1 / d0, d3 / d2, 1e-9);
}

TEST(Extend, RejectsSmallerTarget) {
  const auto f = testutil::random_field(10, 8, 1);
  EXPECT_THROW(extend_input(f, 9, 8), Error);
}

TEST(Extend, RampIsMonotoneAndBounded) {
  const int band = 8;
  double prev = 0.0;
  for (int d = 0; d < band; ++d) {
    const double s = blend_ramp(d, band);
    EXPECT_GT(s, prev);
    EXPECT_LT(s, 1.0);
    prev = s;
  }
  EXPECT_NEAR(blend_ramp(0, band), 0.01, 1e-12);
  EXPECT_NEAR(blend_ramp(band - 1, band), 0.99, 1e-12);
  EXPECT_EQ(blend_ramp(band, band), 1.0);
}
