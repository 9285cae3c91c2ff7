#include "cli/fixtures.hpp"

#include <cmath>
#include <vector>

#include "surftex/error.hpp"
#include "surftex/mill/field.hpp"
#include "surftex/random.hpp"

namespace surftex::cli {
namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    k[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += k[i + radius];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable blur with periodic wrap-around.
std::vector<double> blur(const std::vector<double>& src, int w, int h, double sigma) {
  const auto k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  auto wrap = [](int i, int n) { return ((i % n) + n) % n; };
  std::vector<double> tmp(src.size()), out(src.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d)
        s += k[d + radius] * src[static_cast<std::size_t>(y) * w + wrap(x + d, w)];
      tmp[static_cast<std::size_t>(y) * w + x] = s;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d)
        s += k[d + radius] * tmp[static_cast<std::size_t>(wrap(y + d, h)) * w + x];
      out[static_cast<std::size_t>(y) * w + x] = s;
    }
  return out;
}

}  // namespace

HeightField fixture_gen(const FixtureOptions& o, std::uint64_t seed) {
  if (o.width < 2 || o.height < 2)
    fail(ErrorCode::invalid_argument, "fixture needs at least 2x2 pixels");
  if (!(o.std_um > 0.0)) fail(ErrorCode::invalid_argument, "fixture std must be positive");
  HeightField raw = HeightField::filled(1, 1, 1.0, 0.0);
  if (o.kind == FixtureKind::sandblasted) {
    if (!(o.smoothing_px > 0.0))
      fail(ErrorCode::invalid_argument, "fixture smoothing must be positive");
    auto rng = RandomStream(seed).substream("fixture.sandblasted");
    std::vector<double> noise(static_cast<std::size_t>(o.width) * o.height);
    for (double& v : noise) v = rng.normal();
    raw = HeightField(o.width, o.height, o.spacing_um,
                      blur(noise, o.width, o.height, o.smoothing_px));
  } else {
    mill::MillConfig cfg;
    cfg.d_mm = 4.0;
    cfg.alpha = 0.2;
    cfg.delta_mm = 0.09;
    cfg.shape = mill::Shape::cosine;
    cfg.w_minus = {0.4, 0.02};
    cfg.seed = RandomStream(seed).substream("fixture.milled").next_u64();
    const mill::Viewport view{0.0, 0.0, o.width, o.height, o.spacing_um};
    raw = mill::render(cfg, view).field;
  }
  return mill::adapt_height(raw, o.mean_um, o.std_um * o.std_um);
}

}  // namespace surftex::cli
