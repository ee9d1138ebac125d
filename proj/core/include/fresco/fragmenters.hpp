#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fresco/geometry.hpp"
#include "fresco/raster.hpp"

namespace fresco::fragmenters {

enum class Method { SquareGrid, CrossingCuts, NonConvexPartition, ErodedVoronoi };

/// Stable lowercase name used in file names and manifests
/// ("square", "crossing_cuts", "nonconvex", "eroded_voronoi").
std::string_view method_name(Method m);
/// Accepts the stable names plus the CLI spellings with dashes.
std::optional<Method> parse_method(std::string_view name);

struct FragmentationConfig {
  Method method = Method::SquareGrid;
  int target_count = 12;  // N; ignored for CrossingCuts
  int cut_count = 0;      // CrossingCuts only
  std::uint64_t seed = 0;
  double point_multiplier = 4.0;  // R = ceil(point_multiplier * N)
  bool prioritize_small = true;
  int erosion_max_px = 30;
  bool smooth_contours = true;
  bool rotate_fragments = true;  // see for_method() for per-method defaults

  /// Defaults for `method`, including rotate_fragments = (method == SquareGrid).
  static FragmentationConfig for_method(Method method);
};

struct Fragment {
  std::string fragment_id;
  std::variant<geometry::Polygon, raster::RasterMask> region;
  double rotation_deg = 0.0;
};

struct FragmentSet {
  std::string source_id;
  Method method = Method::SquareGrid;
  FragmentationConfig config;  // snapshot of the generating config
  std::vector<Fragment> fragments;
  raster::PixelRect crop_rect;
};

/// Rows x cols = N minimising |cols/rows - aspect|, then the largest centred
/// crop of integer-sided squares. Throws "image too small" below 32 px cells.
struct GridLayout {
  int rows = 0;
  int cols = 0;
  int side = 0;
  raster::PixelRect crop;
};
GridLayout square_grid_layout(int width, int height, int count);

FragmentSet fragment_square_grid(int width, int height, const FragmentationConfig& config);

/// Random convex polygon, then `cut_count` lines each through two uniform
/// interior points of that polygon; every cut splits every piece it crosses.
FragmentSet fragment_crossing_cuts(int width, int height, const FragmentationConfig& config);

/// Delaunay triangulation of the four image corners plus R-4 uniform points,
/// then neighbour merges down to N pieces. With prioritize_small the globally
/// smallest piece merges with its smallest neighbour (ties: lowest id);
/// otherwise a random piece merges with a random neighbour.
FragmentSet fragment_nonconvex_partition(int width, int height, const FragmentationConfig& config);

/// Voronoi cells of N distinct random pixel centres, each eroded by a radius
/// drawn from {0..erosion_max_px} and optionally smoothed. Fragments are
/// raster regions, each a subset of its parent cell.
FragmentSet fragment_eroded_voronoi(int width, int height, const FragmentationConfig& config);

/// Dispatches on config.method.
FragmentSet fragment(int width, int height, const FragmentationConfig& config, std::string source_id = {});

/// Mask of a fragment in source coordinates (rasterizes polygon regions).
raster::RasterMask fragment_mask(const Fragment& f, const raster::PixelRect& crop);

inline std::uint64_t lazy_caterer(int cuts) {
  const auto n = static_cast<std::uint64_t>(cuts);
  return 1 + n * (n + 1) / 2;
}

}  // namespace fresco::fragmenters
