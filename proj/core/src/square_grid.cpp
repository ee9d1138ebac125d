#include <cmath>
#include <limits>

#include "fragmenters_internal.hpp"
#include "fresco/error.hpp"

namespace fresco::fragmenters {

namespace {
constexpr int kMinCellSide = 32;
}

GridLayout square_grid_layout(int width, int height, int count) {
  detail::require_dimensions(width, height);
  if (count < 1) throw InputError("target_count must be >= 1");
  const double aspect = static_cast<double>(width) / height;
  GridLayout best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int rows = 1; rows <= count; ++rows) {
    if (count % rows != 0) continue;
    const int cols = count / rows;
    const double score = std::abs(static_cast<double>(cols) / rows - aspect);
    if (score < best_score) {
      best_score = score;
      best.rows = rows;
      best.cols = cols;
    }
  }
  best.side = std::min(width / best.cols, height / best.rows);
  if (best.side < kMinCellSide) throw InputError("image too small");
  const int cw = best.cols * best.side;
  const int ch = best.rows * best.side;
  best.crop = {(width - cw) / 2, (height - ch) / 2, cw, ch};
  return best;
}

FragmentSet fragment_square_grid(int width, int height, const FragmentationConfig& config) {
  detail::require_method(config, Method::SquareGrid);
  const GridLayout layout = square_grid_layout(width, height, config.target_count);
  Rng rng(config.seed);

  FragmentSet out;
  out.method = Method::SquareGrid;
  out.crop_rect = layout.crop;
  const auto total = static_cast<std::size_t>(layout.rows) * layout.cols;
  out.fragments.reserve(total);
  const double s = layout.side;
  for (int r = 0; r < layout.rows; ++r) {
    for (int c = 0; c < layout.cols; ++c) {
      const double x0 = layout.crop.x + c * s;
      const double y0 = layout.crop.y + r * s;
      Fragment f{detail::local_id(out.fragments.size(), total),
                 geometry::Polygon({{x0, y0}, {x0 + s, y0}, {x0 + s, y0 + s}, {x0, y0 + s}}), 0.0};
      if (config.rotate_fragments) f.rotation_deg = rng.uniform(0.0, 360.0);
      out.fragments.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace fresco::fragmenters
