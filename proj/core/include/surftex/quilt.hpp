#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "surftex/heightfield.hpp"
#include "surftex/random.hpp"

namespace surftex {

/// n x n patches of side patch_size overlapping by `overlap` pixels.
struct StitchPlan {
  int patches_per_axis = 1;
  int patch_size = 0;
  int overlap = 0;

  int output_size() const noexcept { return (patch_size - overlap) * patches_per_axis + overlap; }
  void validate() const;

  /// Smallest plan whose output covers `extent` pixels.
  static StitchPlan covering(int extent, int patch_size, int overlap);
};

/// A horizontal path runs left-right with one cell per column; a vertical
/// path runs top-bottom with one cell per row.
enum class Orientation { horizontal, vertical };

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Minimal-error cut through an overlap. Vertical paths are stored top to
/// bottom; horizontal paths right to left, so cells[k].x == size - 1 - k.
struct SeamPath {
  Orientation orientation = Orientation::vertical;
  std::vector<Cell> cells;

  /// Free-axis coordinate at a sweep position: x at row `sweep` for vertical
  /// paths, y at column `sweep` for horizontal ones.
  int offset_at(int sweep) const;
  bool is_connected() const;
};

/// left: columns [0, overlap) over all rows (neighbour on the left).
/// top: rows [0, overlap) over all columns (neighbour above).
/// l_shaped: union of both.
enum class OverlapRegion { left, top, l_shaped };

class ErrorSurface {
 public:
  ErrorSurface(int size, int overlap, OverlapRegion region, std::vector<double> values);

  int size() const noexcept { return size_; }
  int overlap() const noexcept { return overlap_; }
  OverlapRegion region() const noexcept { return region_; }
  bool contains(int x, int y) const noexcept;
  /// Squared difference at (x, y); only meaningful where contains() holds.
  double at(int x, int y) const noexcept {
    return values_[static_cast<std::size_t>(y) * static_cast<std::size_t>(size_) +
                   static_cast<std::size_t>(x)];
  }

 private:
  int size_;
  int overlap_;
  OverlapRegion region_;
  std::vector<double> values_;
};

/// e(p) = (existing(p) - patch(p))^2 over the region; both inputs size x size.
ErrorSurface error_surface(const HeightField& existing, const HeightField& patch, int overlap,
                           OverlapRegion region);

/// Globally minimal 8-connected monotone path across the straight strip for
/// `orientation`. Ties go to the smaller free-axis index.
SeamPath min_seam(const ErrorSurface& surface, Orientation orientation);

double path_cost(const ErrorSurface& surface, const SeamPath& path);

/// L-shaped cut made of a horizontal and a vertical path sharing `junction`.
/// `cost` counts the junction, the horizontal cells right of it and the
/// vertical cells below it: the cells that actually separate the new patch.
struct LSeam {
  SeamPath horizontal;
  SeamPath vertical;
  Cell junction;
  double cost = 0.0;
};

/// Continues `previous_horizontal` (the previous patch's horizontal path,
/// already shifted into this patch's coordinates; it must cover columns
/// [0, overlap) inside the top strip) so the new cut connects to it.
///
/// The junction is chosen on the previous path inside the corner block. Left
/// of it the previous cut is kept; right of it the horizontal path is the
/// cheapest 8-connected elongation through the top strip; below it the
/// vertical path is the cheapest 8-connected path down the left strip. The
/// junction minimizing the summed error wins (ties: leftmost).
LSeam min_seam_L(const ErrorSurface& surface, const SeamPath& previous_horizontal);

/// 1 keeps the existing canvas value, 0 takes the new patch.
class StitchMask {
 public:
  StitchMask(int size, std::vector<std::uint8_t> keep);

  static StitchMask all_new(int size);

  int size() const noexcept { return size_; }
  bool keeps_existing(int x, int y) const noexcept {
    return keep_[static_cast<std::size_t>(y) * static_cast<std::size_t>(size_) +
                 static_cast<std::size_t>(x)] != 0;
  }
  std::size_t count_new() const noexcept;

 private:
  int size_;
  std::vector<std::uint8_t> keep_;
};

/// Straight alignments: the new patch wins on and beyond the path
/// (x >= path(y) for vertical paths, y >= path(x) for horizontal ones).
StitchMask mask_from_path(const SeamPath& path, int size);
/// L-shaped alignment: new where x >= vertical(y) and y >= horizontal(x).
StitchMask mask_from_path(const LSeam& seam, int size);

/// Mask pixels whose 3x3 neighbourhood (clipped to the mask) holds both values.
std::vector<Cell> seam_pixels(const StitchMask& mask);

/// Blends `patch` into the window at `position` (mask*canvas + (1-mask)*patch)
/// and then replaces every seam pixel by the 3x3 mean of the blended canvas,
/// clipping the neighbourhood at the canvas border.
HeightField insert_patch(HeightField canvas, const HeightField& patch, Cell position,
                         const StitchMask& mask);

/// Patch (i, j) is column i, row j of the layout; the stream is private to it.
using PatchProvider = std::function<HeightField(int i, int j, RandomStream& rng)>;

enum class Alignment { first, horizontal, vertical, l_shaped };

struct PatchRecord {
  int i = 0;
  int j = 0;
  Alignment alignment = Alignment::first;
  std::optional<SeamPath> horizontal;
  std::optional<SeamPath> vertical;
  std::optional<Cell> junction;
  double cost = 0.0;
};

struct StitchOptions {
  /// Threads used to generate patches ahead of the sequential insertion.
  int threads = 1;
};

/// Raster-scan quilting of provider patches. Patch (i, j) draws from
/// rng.substream(j * n + i), so the result does not depend on `threads`.
HeightField stitch_all(const StitchPlan& plan, const PatchProvider& provider,
                       const RandomStream& rng, const StitchOptions& options = {},
                       std::vector<PatchRecord>* trace = nullptr);

}  // namespace surftex
