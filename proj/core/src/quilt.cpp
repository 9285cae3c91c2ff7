#include "surftex/quilt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "surftex/error.hpp"

namespace surftex {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimal monotone path through a strip of `length` sweep steps and `width`
// free positions. cost(s, k) is the error at sweep step s, offset k. Returns
// the offset per sweep step.
template <class CostFn>
std::vector<int> strip_dp(int length, int width, CostFn cost) {
  std::vector<double> acc(static_cast<std::size_t>(length) * width);
  std::vector<int> parent(acc.size(), -1);
  auto id = [width](int s, int k) { return static_cast<std::size_t>(s) * width + k; };
  for (int k = 0; k < width; ++k) acc[id(0, k)] = cost(0, k);
  for (int s = 1; s < length; ++s) {
    for (int k = 0; k < width; ++k) {
      double best = kInf;
      int arg = -1;
      for (int d = -1; d <= 1; ++d) {
        const int p = k + d;
        if (p < 0 || p >= width) continue;
        if (acc[id(s - 1, p)] < best) {
          best = acc[id(s - 1, p)];
          arg = p;
        }
      }
      acc[id(s, k)] = cost(s, k) + best;
      parent[id(s, k)] = arg;
    }
  }
  int k = 0;
  for (int c = 1; c < width; ++c)
    if (acc[id(length - 1, c)] < acc[id(length - 1, k)]) k = c;
  std::vector<int> offsets(static_cast<std::size_t>(length));
  for (int s = length - 1; s >= 0; --s) {
    offsets[s] = k;
    k = parent[id(s, k)];
  }
  return offsets;
}

void require_square(const HeightField& f, int size, const char* what) {
  if (f.width() != size || f.height() != size)
    fail(ErrorCode::size_mismatch, std::string(what) + " must be " + std::to_string(size) + "x" +
                                       std::to_string(size));
}

}  // namespace

void StitchPlan::validate() const {
  if (patches_per_axis < 1) fail(ErrorCode::invalid_argument, "need at least one patch per axis");
  if (!(overlap > 1 && overlap < patch_size))
    fail(ErrorCode::invalid_argument, "overlap must satisfy 1 < overlap < patch_size, got " +
                                          std::to_string(overlap) + " vs " +
                                          std::to_string(patch_size));
}

StitchPlan StitchPlan::covering(int extent, int patch_size, int overlap) {
  StitchPlan plan{1, patch_size, overlap};
  plan.validate();
  const int step = patch_size - overlap;
  plan.patches_per_axis = std::max(1, (extent - overlap + step - 1) / step);
  return plan;
}

int SeamPath::offset_at(int sweep) const {
  const int n = static_cast<int>(cells.size());
  if (sweep < 0 || sweep >= n) fail(ErrorCode::out_of_range, "seam sweep index");
  return orientation == Orientation::vertical ? cells[sweep].x : cells[n - 1 - sweep].y;
}

bool SeamPath::is_connected() const {
  for (std::size_t k = 1; k < cells.size(); ++k) {
    const Cell a = cells[k - 1];
    const Cell b = cells[k];
    if (orientation == Orientation::vertical) {
      if (b.y - a.y != 1 || std::abs(b.x - a.x) > 1) return false;
    } else {
      if (b.x - a.x != -1 || std::abs(b.y - a.y) > 1) return false;
    }
  }
  return true;
}

ErrorSurface::ErrorSurface(int size, int overlap, OverlapRegion region, std::vector<double> values)
    : size_(size), overlap_(overlap), region_(region), values_(std::move(values)) {
  if (size < 1 || overlap < 1 || overlap > size)
    fail(ErrorCode::invalid_argument, "error surface needs 1 <= overlap <= size");
  if (values_.size() != static_cast<std::size_t>(size) * size)
    fail(ErrorCode::size_mismatch, "error surface values must cover size x size");
}

bool ErrorSurface::contains(int x, int y) const noexcept {
  if (x < 0 || y < 0 || x >= size_ || y >= size_) return false;
  switch (region_) {
    case OverlapRegion::left: return x < overlap_;
    case OverlapRegion::top: return y < overlap_;
    case OverlapRegion::l_shaped: return x < overlap_ || y < overlap_;
  }
  return false;
}

ErrorSurface error_surface(const HeightField& existing, const HeightField& patch, int overlap,
                           OverlapRegion region) {
  const int size = patch.width();
  require_square(patch, size, "patch");
  require_square(existing, size, "existing cut-out");
  std::vector<double> values(static_cast<std::size_t>(size) * size, 0.0);
  ErrorSurface probe(size, overlap, region, values);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      if (!probe.contains(x, y)) continue;
      const double d = existing.at(x, y) - patch.at(x, y);
      values[static_cast<std::size_t>(y) * size + x] = d * d;
    }
  }
  return ErrorSurface(size, overlap, region, std::move(values));
}

SeamPath min_seam(const ErrorSurface& surface, Orientation orientation) {
  const int n = surface.size();
  const int o = surface.overlap();
  if (o < 2) fail(ErrorCode::invalid_argument, "overlap strip narrower than 2");
  const auto region = surface.region();
  SeamPath path{orientation, {}};
  path.cells.reserve(static_cast<std::size_t>(n));
  if (orientation == Orientation::vertical) {
    if (region == OverlapRegion::top)
      fail(ErrorCode::invalid_argument, "vertical seam needs the left strip");
    const auto xs = strip_dp(n, o, [&](int y, int x) { return surface.at(x, y); });
    for (int y = 0; y < n; ++y) path.cells.push_back({xs[y], y});
  } else {
    if (region == OverlapRegion::left)
      fail(ErrorCode::invalid_argument, "horizontal seam needs the top strip");
    // Swept right to left, matching the stored orientation.
    const auto ys = strip_dp(n, o, [&](int s, int y) { return surface.at(n - 1 - s, y); });
    for (int s = 0; s < n; ++s) path.cells.push_back({n - 1 - s, ys[s]});
  }
  return path;
}

double path_cost(const ErrorSurface& surface, const SeamPath& path) {
  double sum = 0.0;
  for (const Cell c : path.cells) {
    if (!surface.contains(c.x, c.y)) fail(ErrorCode::out_of_range, "path leaves overlap region");
    sum += surface.at(c.x, c.y);
  }
  return sum;
}

LSeam min_seam_L(const ErrorSurface& surface, const SeamPath& previous_horizontal) {
  const int n = surface.size();
  const int o = surface.overlap();
  if (surface.region() != OverlapRegion::l_shaped)
    fail(ErrorCode::invalid_argument, "L-shaped seam needs an L-shaped error surface");
  if (o < 2) fail(ErrorCode::invalid_argument, "overlap strip narrower than 2");
  if (previous_horizontal.orientation != Orientation::horizontal ||
      previous_horizontal.cells.empty())
    fail(ErrorCode::invalid_argument, "L-shaped stitching needs the previous horizontal path");

  std::vector<int> prev_y(static_cast<std::size_t>(o), -1);
  for (const Cell c : previous_horizontal.cells) {
    if (c.x < 0 || c.x >= o) continue;
    if (c.y < 0 || c.y >= o)
      fail(ErrorCode::out_of_range, "previous path leaves the corner block");
    prev_y[c.x] = c.y;
  }
  for (int x = 0; x < o; ++x) {
    if (prev_y[x] < 0)
      fail(ErrorCode::invalid_argument,
           "previous path does not reach the boundary shared with this overlap");
    if (x > 0 && std::abs(prev_y[x] - prev_y[x - 1]) > 1)
      fail(ErrorCode::invalid_argument, "previous path is not 8-connected");
  }

  auto id = [o](int s, int k) { return static_cast<std::size_t>(s) * o + k; };

  // right[x][y]: cheapest horizontal path from (x, y) to the right edge.
  std::vector<double> right(static_cast<std::size_t>(n) * o);
  std::vector<int> right_next(right.size(), -1);
  for (int y = 0; y < o; ++y) right[id(n - 1, y)] = surface.at(n - 1, y);
  for (int x = n - 2; x >= 0; --x) {
    for (int y = 0; y < o; ++y) {
      double best = kInf;
      for (int d = -1; d <= 1; ++d) {
        const int p = y + d;
        if (p < 0 || p >= o) continue;
        if (right[id(x + 1, p)] < best) {
          best = right[id(x + 1, p)];
          right_next[id(x, y)] = p;
        }
      }
      right[id(x, y)] = surface.at(x, y) + best;
    }
  }

  // down[y][x]: cheapest vertical path from (x, y) to the bottom edge.
  std::vector<double> down(static_cast<std::size_t>(n) * o);
  std::vector<int> down_next(down.size(), -1);
  for (int x = 0; x < o; ++x) down[id(n - 1, x)] = surface.at(x, n - 1);
  for (int y = n - 2; y >= 0; --y) {
    for (int x = 0; x < o; ++x) {
      double best = kInf;
      for (int d = -1; d <= 1; ++d) {
        const int p = x + d;
        if (p < 0 || p >= o) continue;
        if (down[id(y + 1, p)] < best) {
          best = down[id(y + 1, p)];
          down_next[id(y, x)] = p;
        }
      }
      down[id(y, x)] = surface.at(x, y) + best;
    }
  }

  double best_total = kInf;
  int best_c = 0;
  for (int c = 0; c < o; ++c) {
    const int jy = prev_y[c];
    // Both continuations exclude the junction itself, whose error is added once.
    const double total = surface.at(c, jy) + (right[id(c, jy)] - surface.at(c, jy)) +
                         (down[id(jy, c)] - surface.at(c, jy));
    if (total < best_total) {
      best_total = total;
      best_c = c;
    }
  }

  const int jy = prev_y[best_c];
  LSeam seam;
  seam.junction = {best_c, jy};
  seam.cost = best_total;

  std::vector<int> h(static_cast<std::size_t>(n));
  for (int x = 0; x <= best_c; ++x) h[x] = prev_y[x];
  for (int x = best_c + 1; x < n; ++x) h[x] = right_next[id(x - 1, h[x - 1])];
  seam.horizontal.orientation = Orientation::horizontal;
  for (int x = n - 1; x >= 0; --x) seam.horizontal.cells.push_back({x, h[x]});

  std::vector<int> v(static_cast<std::size_t>(n));
  for (int y = 0; y <= jy; ++y) v[y] = best_c;
  for (int y = jy + 1; y < n; ++y) v[y] = down_next[id(y - 1, v[y - 1])];
  seam.vertical.orientation = Orientation::vertical;
  for (int y = 0; y < n; ++y) seam.vertical.cells.push_back({v[y], y});
  return seam;
}

StitchMask::StitchMask(int size, std::vector<std::uint8_t> keep)
    : size_(size), keep_(std::move(keep)) {
  if (size < 1 || keep_.size() != static_cast<std::size_t>(size) * size)
    fail(ErrorCode::size_mismatch, "mask must be size x size");
}

StitchMask StitchMask::all_new(int size) {
  return StitchMask(size, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size, 0));
}

std::size_t StitchMask::count_new() const noexcept {
  return static_cast<std::size_t>(std::count(keep_.begin(), keep_.end(), std::uint8_t{0}));
}

StitchMask mask_from_path(const SeamPath& path, int size) {
  if (static_cast<int>(path.cells.size()) != size)
    fail(ErrorCode::size_mismatch, "path length must equal patch size");
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const bool take_new = path.orientation == Orientation::vertical ? x >= path.offset_at(y)
                                                                      : y >= path.offset_at(x);
      keep[static_cast<std::size_t>(y) * size + x] = take_new ? 0 : 1;
    }
  }
  return StitchMask(size, std::move(keep));
}

StitchMask mask_from_path(const LSeam& seam, int size) {
  if (static_cast<int>(seam.horizontal.cells.size()) != size ||
      static_cast<int>(seam.vertical.cells.size()) != size)
    fail(ErrorCode::size_mismatch, "path length must equal patch size");
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    const int vx = seam.vertical.offset_at(y);
    for (int x = 0; x < size; ++x) {
      const bool take_new = x >= vx && y >= seam.horizontal.offset_at(x);
      keep[static_cast<std::size_t>(y) * size + x] = take_new ? 0 : 1;
    }
  }
  return StitchMask(size, std::move(keep));
}

std::vector<Cell> seam_pixels(const StitchMask& mask) {
  const int n = mask.size();
  std::vector<Cell> out;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      bool any_keep = false;
      bool any_new = false;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          const int yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= n || yy >= n) continue;
          (mask.keeps_existing(xx, yy) ? any_keep : any_new) = true;
        }
      }
      if (any_keep && any_new) out.push_back({x, y});
    }
  }
  return out;
}

HeightField insert_patch(HeightField canvas, const HeightField& patch, Cell position,
                         const StitchMask& mask) {
  const int n = patch.width();
  require_square(patch, n, "patch");
  if (mask.size() != n) fail(ErrorCode::size_mismatch, "mask does not match patch");
  const int cw = canvas.width();
  const int ch = canvas.height();
  if (position.x < 0 || position.y < 0 || position.x + n > cw || position.y + n > ch)
    fail(ErrorCode::out_of_range, "patch placement outside canvas");

  const double spacing = canvas.spacing_um();
  auto data = std::move(canvas).release();
  auto at = [&](int x, int y) -> double& { return data[static_cast<std::size_t>(y) * cw + x]; };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x)
      if (!mask.keeps_existing(x, y)) at(position.x + x, position.y + y) = patch.at(x, y);

  const auto seam = seam_pixels(mask);
  if (!seam.empty()) {
    const auto blended = data;
    for (const Cell c : seam) {
      const int cx = position.x + c.x;
      const int cy = position.y + c.y;
      double sum = 0.0;
      int count = 0;
      for (int y = std::max(0, cy - 1); y <= std::min(ch - 1, cy + 1); ++y)
        for (int x = std::max(0, cx - 1); x <= std::min(cw - 1, cx + 1); ++x) {
          sum += blended[static_cast<std::size_t>(y) * cw + x];
          ++count;
        }
      at(cx, cy) = sum / count;
    }
  }
  return HeightField(cw, ch, spacing, std::move(data));
}

HeightField stitch_all(const StitchPlan& plan, const PatchProvider& provider,
                       const RandomStream& rng, const StitchOptions& options,
                       std::vector<PatchRecord>* trace) {
  plan.validate();
  const int n = plan.patches_per_axis;
  const int size = plan.patch_size;
  const int o = plan.overlap;
  const int step = size - o;

  std::vector<std::optional<HeightField>> patches(static_cast<std::size_t>(n) * n);
  detail::parallel_for(patches.size(), options.threads, [&](std::size_t k) {
    auto stream = rng.substream(static_cast<std::uint64_t>(k));
    const int i = static_cast<int>(k % n);
    const int j = static_cast<int>(k / n);
    patches[k] = provider(i, j, stream);
  });
  const double spacing = patches.front()->spacing_um();
  for (const auto& p : patches) {
    require_square(*p, size, "provided patch");
    if (p->spacing_um() != spacing)
      fail(ErrorCode::size_mismatch, "provided patches disagree on pixel spacing");
  }

  auto canvas = HeightField::filled(plan.output_size(), plan.output_size(), spacing, 0.0);
  if (trace) trace->clear();
  std::optional<SeamPath> row_path;  // horizontal path of the previous patch in this row

  for (int j = 0; j < n; ++j) {
    row_path.reset();
    for (int i = 0; i < n; ++i) {
      const HeightField& patch = *patches[static_cast<std::size_t>(j) * n + i];
      const Cell pos{i * step, j * step};
      PatchRecord rec{i, j, Alignment::first, {}, {}, {}, 0.0};
      std::optional<StitchMask> mask;

      if (i == 0 && j == 0) {
        mask = StitchMask::all_new(size);
      } else {
        const auto existing = crop(canvas, pos.x, pos.y, size, size);
        if (j == 0) {
          rec.alignment = Alignment::horizontal;
          const auto e = error_surface(existing, patch, o, OverlapRegion::left);
          rec.vertical = min_seam(e, Orientation::vertical);
          rec.cost = path_cost(e, *rec.vertical);
          mask = mask_from_path(*rec.vertical, size);
        } else if (i == 0) {
          rec.alignment = Alignment::vertical;
          const auto e = error_surface(existing, patch, o, OverlapRegion::top);
          rec.horizontal = min_seam(e, Orientation::horizontal);
          rec.cost = path_cost(e, *rec.horizontal);
          mask = mask_from_path(*rec.horizontal, size);
        } else {
          rec.alignment = Alignment::l_shaped;
          SeamPath shifted{Orientation::horizontal, {}};
          for (const Cell c : row_path->cells)
            if (c.x - step >= 0) shifted.cells.push_back({c.x - step, c.y});
          const auto e = error_surface(existing, patch, o, OverlapRegion::l_shaped);
          auto seam = min_seam_L(e, shifted);
          mask = mask_from_path(seam, size);
          rec.cost = seam.cost;
          rec.junction = seam.junction;
          rec.horizontal = std::move(seam.horizontal);
          rec.vertical = std::move(seam.vertical);
        }
      }
      canvas = insert_patch(std::move(canvas), patch, pos, *mask);
      if (rec.horizontal) row_path = rec.horizontal;
      if (trace) trace->push_back(std::move(rec));
    }
  }
  return canvas;
}

}  // namespace surftex
