#include <algorithm>
#include <optional>
#include <unordered_set>

#include "fragmenters_internal.hpp"
#include "fresco/error.hpp"

namespace fresco::fragmenters {

namespace {

// Erode, smooth, and clip back to the parent cell.
raster::RasterMask erode_cell(const raster::RasterMask& cell, int radius, bool smooth) {
  raster::RasterMask m = raster::erode_mask(cell, radius);
  if (smooth) m = raster::smooth_mask(m);
  raster::RasterMask clipped(cell.box());
  for (int r = 0; r < cell.height(); ++r) {
    for (int c = 0; c < cell.width(); ++c) {
      if (cell.at(c, r) > 0.0f && m.at_global(cell.x() + c, cell.y() + r) > 0.0f) clipped.set(c, r, 1.0f);
    }
  }
  if (clipped.empty()) throw Error("mask vanished");
  return clipped.trimmed();
}

}  // namespace

FragmentSet fragment_eroded_voronoi(int width, int height, const FragmentationConfig& config) {
  detail::require_method(config, Method::ErodedVoronoi);
  detail::require_dimensions(width, height);
  const int n = config.target_count;
  if (n < 1) throw InputError("target_count must be >= 1");
  if (static_cast<long long>(n) > static_cast<long long>(width) * height) throw InputError("too many sites for image");
  if (config.erosion_max_px < 0 || config.erosion_max_px > std::min(width, height) / 4) {
    throw InputError("erosion_max_px must be in [0, min(width, height)/4]");
  }
  Rng rng(config.seed);

  // Distinct pixel centres, so every site owns at least its own pixel.
  const auto pixel_count = static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  std::unordered_set<std::uint64_t> taken;
  std::vector<geometry::Point2> sites;
  sites.reserve(static_cast<std::size_t>(n));
  while (sites.size() < static_cast<std::size_t>(n)) {
    const std::uint64_t idx = rng.below(pixel_count);
    if (!taken.insert(idx).second) continue;
    sites.push_back({static_cast<double>(idx % width) + 0.5, static_cast<double>(idx / width) + 0.5});
  }
  std::vector<int> radii(static_cast<std::size_t>(n));
  for (auto& r : radii) r = static_cast<int>(rng.between(0, config.erosion_max_px));

  const geometry::LabelRaster labels = geometry::voronoi_labels(sites, width, height);

  std::vector<raster::PixelRect> boxes(static_cast<std::size_t>(n), {width, height, -1, -1});
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      auto& b = boxes[static_cast<std::size_t>(labels.at(x, y))];
      // width/height temporarily hold the max corner
      b.x = std::min(b.x, x);
      b.y = std::min(b.y, y);
      b.width = std::max(b.width, x);
      b.height = std::max(b.height, y);
    }
  }
  std::vector<raster::RasterMask> cells;
  cells.reserve(boxes.size());
  for (auto& b : boxes) {
    b.width = b.width - b.x + 1;
    b.height = b.height - b.y + 1;
    cells.emplace_back(b);
  }
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      auto& cell = cells[static_cast<std::size_t>(labels.at(x, y))];
      cell.set(x - cell.x(), y - cell.y(), 1.0f);
    }
  }

  FragmentSet out;
  out.method = Method::ErodedVoronoi;
  out.crop_rect = {0, 0, width, height};
  out.fragments.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    // Small cells can vanish under a large radius: halve it until something
    // survives. Radius 0 without smoothing is the cell itself.
    std::optional<raster::RasterMask> shaped;
    for (int r = radii[i]; !shaped; r /= 2) {
      try {
        shaped = erode_cell(cells[i], r, config.smooth_contours);
      } catch (const Error&) {
        if (r == 0) shaped = erode_cell(cells[i], 0, false);
      }
    }
    Fragment f{detail::local_id(i, cells.size()), std::move(*shaped), 0.0};
    out.fragments.push_back(std::move(f));
  }
  if (config.rotate_fragments) {
    for (auto& f : out.fragments) f.rotation_deg = rng.uniform(0.0, 360.0);
  }
  return out;
}

}  // namespace fresco::fragmenters
