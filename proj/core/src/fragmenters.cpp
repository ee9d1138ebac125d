#include "fresco/fragmenters.hpp"

#include <algorithm>
#include <string>

#include "fragmenters_internal.hpp"
#include "fresco/error.hpp"

namespace fresco::fragmenters {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::SquareGrid: return "square";
    case Method::CrossingCuts: return "crossing_cuts";
    case Method::NonConvexPartition: return "nonconvex";
    case Method::ErodedVoronoi: return "eroded_voronoi";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "square" || n == "square_grid") return Method::SquareGrid;
  if (n == "crossing_cuts" || n == "cuts") return Method::CrossingCuts;
  if (n == "nonconvex" || n == "nonconvex_partition" || n == "non_convex") return Method::NonConvexPartition;
  if (n == "eroded_voronoi" || n == "voronoi") return Method::ErodedVoronoi;
  return std::nullopt;
}

FragmentationConfig FragmentationConfig::for_method(Method method) {
  FragmentationConfig c;
  c.method = method;
  c.rotate_fragments = method == Method::SquareGrid;
  return c;
}

namespace detail {

std::string local_id(std::size_t index, std::size_t total) {
  std::string digits = std::to_string(index);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(total > 0 ? total - 1 : 0).size());
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return digits;
}

void require_method(const FragmentationConfig& config, Method expected) {
  if (config.method != expected) {
    throw Error("fragmentation config method mismatch: expected " + std::string(method_name(expected)));
  }
}

void require_dimensions(int width, int height) {
  if (width <= 0 || height <= 0) throw Error("image dimensions must be positive");
}

}  // namespace detail

FragmentSet fragment(int width, int height, const FragmentationConfig& config, std::string source_id) {
  FragmentSet out;
  switch (config.method) {
    case Method::SquareGrid: out = fragment_square_grid(width, height, config); break;
    case Method::CrossingCuts: out = fragment_crossing_cuts(width, height, config); break;
    case Method::NonConvexPartition: out = fragment_nonconvex_partition(width, height, config); break;
    case Method::ErodedVoronoi: out = fragment_eroded_voronoi(width, height, config); break;
  }
  out.source_id = std::move(source_id);
  out.config = config;
  return out;
}

raster::RasterMask fragment_mask(const Fragment& f, const raster::PixelRect& crop) {
  if (const auto* poly = std::get_if<geometry::Polygon>(&f.region)) {
    return raster::rasterize_polygon(*poly, {double(crop.x), double(crop.y), double(crop.width), double(crop.height)});
  }
  return std::get<raster::RasterMask>(f.region);
}

}  // namespace fresco::fragmenters
