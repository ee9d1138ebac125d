#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fresco/rng.hpp"

namespace fresco::geometry {

/// Absolute tolerance for orientation and intersection predicates. Pixel
/// coordinates are bounded by ~1e4, so doubles leave ample headroom.
inline constexpr double kTolerance = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Twice the signed area of triangle (a, b, c); positive when counter-clockwise.
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

/// Shoelace signed area of a vertex loop.
double signed_area(std::span<const Point2> loop);

/// Axis-aligned rectangle in pixel units.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double right() const { return x + width; }
  double bottom() const { return y + height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// A simple, counter-clockwise polygon with positive area.
///
/// Construction validates the invariants: at least three vertices, finite
/// coordinates, no self-intersection and area above tolerance. Clockwise input
/// is reversed; consecutive duplicate vertices are dropped. Collinear vertices
/// are kept, since partitions rely on them to share boundary chains exactly.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point2& operator[](std::size_t i) const { return vertices_[i]; }
  double area() const { return area_; }
  Rect bounds() const;

  friend bool operator==(const Polygon& a, const Polygon& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point2> vertices_;
  double area_ = 0.0;
};

/// Infinite line through `point` along `direction`.
struct Line {
  Point2 point;
  Point2 direction;
};

/// Triangulation of a point set. adjacency[t][i] is the simplex across the
/// edge simplices[t][i] -> simplices[t][(i+1)%3], or -1 on the hull.
struct Triangulation {
  std::vector<Point2> points;
  std::vector<std::array<int, 3>> simplices;
  std::vector<std::array<int, 3>> adjacency;
};

/// Per-pixel nearest-site labels, row-major.
struct LabelRaster {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;

  std::int32_t at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

double polygon_area(const Polygon& p);

bool is_convex(const Polygon& p);

/// True when no two non-adjacent edges touch and adjacent edges do not fold back.
bool is_simple(std::span<const Point2> loop);

/// Pixel-centre membership test with the half-open crossing rule: a point on
/// an edge shared by two polygons of a partition belongs to exactly one.
bool contains(const Polygon& p, Point2 q);

/// Cuts a convex polygon. Returns two convex pieces when the line crosses the
/// interior, otherwise the input unchanged. Throws "convex input required".
std::vector<Polygon> split_polygon_by_line(const Polygon& p, const Line& line);

/// Delaunay triangulation by x-sorted sweep and Lawson flips. Co-circular
/// quadrilaterals take the diagonal with the lexicographically smallest
/// sorted index pair. Throws "insufficient points" for < 3 or all-collinear
/// input, "duplicate points" for repeated coordinates.
Triangulation delaunay_triangulate(std::span<const Point2> points);

/// Joins two polygons across their single shared boundary chain (vertices
/// compared exactly). Throws "not mergeable" when they share no edge, share a
/// disconnected boundary, overlap, or would pinch at a vertex.
Polygon merge_polygons(const Polygon& a, const Polygon& b);

/// Index-loop form of merge_polygons used by partitions whose fragments share
/// vertex ids. Both loops are counter-clockwise. Returns nullopt where
/// merge_polygons would throw (overlap is not checked here).
std::optional<std::vector<int>> merge_index_loops(std::span<const int> a, std::span<const int> b);

/// Convex hull (counter-clockwise, collinear points removed). Throws
/// "degenerate polygon" when the hull has no area.
Polygon convex_hull(std::span<const Point2> points);

/// Convex hull of 12 uniform points in the centred 80% inset of the bounds,
/// resampled until its area reaches a quarter of the bounds.
Polygon random_convex_polygon(double width, double height, Rng& rng);

/// Nearest-site label per pixel centre (x+0.5, y+0.5); exact ties go to the
/// lowest site index. Throws "duplicate sites", or "empty voronoi cell" when a
/// site owns no pixel centre.
LabelRaster voronoi_labels(std::span<const Point2> sites, int width, int height);

}  // namespace fresco::geometry
