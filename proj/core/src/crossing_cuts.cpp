#include "fragmenters_internal.hpp"
#include "fresco/error.hpp"

namespace fresco::fragmenters {

namespace {

geometry::Point2 uniform_interior_point(const geometry::Polygon& p, Rng& rng) {
  const geometry::Rect b = p.bounds();
  while (true) {
    const geometry::Point2 q{rng.uniform(b.x, b.right()), rng.uniform(b.y, b.bottom())};
    if (geometry::contains(p, q)) return q;
  }
}

}  // namespace

FragmentSet fragment_crossing_cuts(int width, int height, const FragmentationConfig& config) {
  detail::require_method(config, Method::CrossingCuts);
  detail::require_dimensions(width, height);
  if (config.cut_count < 0) throw InputError("cut_count must be >= 0");
  Rng rng(config.seed);

  const geometry::Polygon outline = geometry::random_convex_polygon(width, height, rng);
  std::vector<geometry::Polygon> pieces{outline};
  for (int cut = 0; cut < config.cut_count; ++cut) {
    geometry::Point2 a = uniform_interior_point(outline, rng);
    geometry::Point2 b = uniform_interior_point(outline, rng);
    while (geometry::norm(b - a) <= geometry::kTolerance) b = uniform_interior_point(outline, rng);
    const geometry::Line line{a, b - a};

    std::vector<geometry::Polygon> next;
    next.reserve(pieces.size() * 2);
    for (const auto& piece : pieces) {
      for (auto& part : geometry::split_polygon_by_line(piece, line)) next.push_back(std::move(part));
    }
    pieces = std::move(next);
  }

  FragmentSet out;
  out.method = Method::CrossingCuts;
  out.crop_rect = {0, 0, width, height};
  out.fragments.reserve(pieces.size());
  for (auto& piece : pieces) {
    Fragment f{detail::local_id(out.fragments.size(), pieces.size()), std::move(piece), 0.0};
    if (config.rotate_fragments) f.rotation_deg = rng.uniform(0.0, 360.0);
    out.fragments.push_back(std::move(f));
  }
  return out;
}

}  // namespace fresco::fragmenters
