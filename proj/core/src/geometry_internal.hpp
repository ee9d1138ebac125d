#pragma once

#include "fresco/geometry.hpp"

namespace fresco::geometry::detail {

// Half-open row rule shared by contains() and the rasterizer: an edge spans
// row y when min(y) <= y < max(y).
inline bool edge_spans_row(Point2 a, Point2 b, double y) { return (a.y > y) != (b.y > y); }

// Endpoints are put in canonical order so that two polygons sharing an edge
// compute the bit-identical crossing.
inline double edge_x_at(Point2 a, Point2 b, double y) {
  if (b.y < a.y || (b.y == a.y && b.x < a.x)) std::swap(a, b);
  return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

}  // namespace fresco::geometry::detail
