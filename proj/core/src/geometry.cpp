#include "fresco/geometry.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <utility>

#include "fresco/error.hpp"
#include "geometry_internal.hpp"

namespace fresco::geometry {

namespace {

int sign_with_tolerance(double v, double scale) {
  if (std::abs(v) <= kTolerance * std::max(scale, 1.0)) return 0;
  return v > 0 ? 1 : -1;
}

bool within_box(Point2 a, Point2 b, Point2 p) {
  return p.x >= std::min(a.x, b.x) - kTolerance && p.x <= std::max(a.x, b.x) + kTolerance &&
         p.y >= std::min(a.y, b.y) - kTolerance && p.y <= std::max(a.y, b.y) + kTolerance;
}

bool segments_touch(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double lq = norm(q2 - q1);
  const double lp = norm(p2 - p1);
  const int s1 = sign_with_tolerance(orient(q1, q2, p1), lq);
  const int s2 = sign_with_tolerance(orient(q1, q2, p2), lq);
  const int s3 = sign_with_tolerance(orient(p1, p2, q1), lp);
  const int s4 = sign_with_tolerance(orient(p1, p2, q2), lp);
  if (s1 * s2 < 0 && s3 * s4 < 0) return true;
  if (s1 == 0 && within_box(q1, q2, p1)) return true;
  if (s2 == 0 && within_box(q1, q2, p2)) return true;
  if (s3 == 0 && within_box(p1, p2, q1)) return true;
  if (s4 == 0 && within_box(p1, p2, q2)) return true;
  return false;
}

}  // namespace

double signed_area(std::span<const Point2> loop) {
  const std::size_t n = loop.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += loop[j].x * loop[i].y - loop[i].x * loop[j].y;
  }
  return 0.5 * twice;
}

Polygon::Polygon(std::vector<Point2> vertices) {
  for (const auto& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw Error("non-finite vertex");
  }
  std::vector<Point2> cleaned;
  cleaned.reserve(vertices.size());
  for (const auto& v : vertices) {
    if (cleaned.empty() || norm(v - cleaned.back()) > kTolerance) cleaned.push_back(v);
  }
  while (cleaned.size() > 1 && norm(cleaned.front() - cleaned.back()) <= kTolerance) cleaned.pop_back();
  if (cleaned.size() < 3) throw Error("degenerate polygon: fewer than 3 vertices");

  double area = signed_area(cleaned);
  if (area < 0) {
    std::reverse(cleaned.begin(), cleaned.end());
    area = -area;
  }
  if (area <= kTolerance) throw Error("degenerate polygon");
  if (!is_simple(cleaned)) throw Error("polygon not simple");
  vertices_ = std::move(cleaned);
  area_ = area;
}

Rect Polygon::bounds() const {
  double x0 = vertices_[0].x, x1 = x0, y0 = vertices_[0].y, y1 = y0;
  for (const auto& v : vertices_) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

double polygon_area(const Polygon& p) { return p.area(); }

bool is_convex(const Polygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e1 = v[(i + 1) % n] - v[i];
    const Point2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
    // Normalised turn; collinear vertices count as convex.
    if (cross(e1, e2) < -kTolerance * norm(e1) * norm(e2)) return false;
  }
  return true;
}

bool is_simple(std::span<const Point2> loop) {
  const std::size_t n = loop.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = loop[i];
    const Point2 b = loop[(i + 1) % n];
    const Point2 c = loop[(i + 2) % n];
    const Point2 e1 = b - a;
    const Point2 e2 = c - b;
    if (std::abs(cross(e1, e2)) <= kTolerance * norm(e1) * norm(e2) && dot(e1, e2) < 0) return false;
  }
  if (n == 3) return true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the wrap-around
      if (segments_touch(loop[i], loop[(i + 1) % n], loop[j], loop[(j + 1) % n])) return false;
    }
  }
  return true;
}

bool contains(const Polygon& p, Point2 q) {
  const auto& v = p.vertices();
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (detail::edge_spans_row(v[j], v[i], q.y) && q.x < detail::edge_x_at(v[j], v[i], q.y)) {
      inside = !inside;
    }
  }
  return inside;
}

std::vector<Polygon> split_polygon_by_line(const Polygon& p, const Line& line) {
  const double len = norm(line.direction);
  if (!(len > 0.0) || !std::isfinite(len)) throw Error("zero cut direction");
  if (!is_convex(p)) throw Error("convex input required");
  const Point2 dir = (1.0 / len) * line.direction;

  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::vector<double> dist(n);
  std::vector<int> side(n);
  bool any_left = false, any_right = false;
  for (std::size_t i = 0; i < n; ++i) {
    dist[i] = cross(dir, v[i] - line.point);
    side[i] = dist[i] > kTolerance ? 1 : (dist[i] < -kTolerance ? -1 : 0);
    any_left |= side[i] > 0;
    any_right |= side[i] < 0;
  }
  if (!any_left || !any_right) return {p};

  std::vector<Point2> left, right;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (side[i] >= 0) left.push_back(v[i]);
    if (side[i] <= 0) right.push_back(v[i]);
    if (side[i] * side[j] < 0) {
      const double t = dist[i] / (dist[i] - dist[j]);
      const Point2 x = v[i] + t * (v[j] - v[i]);
      left.push_back(x);
      right.push_back(x);
    }
  }
  if (signed_area(left) <= kTolerance || signed_area(right) <= kTolerance) return {p};
  std::vector<Polygon> out;
  out.emplace_back(std::move(left));
  out.emplace_back(std::move(right));
  return out;
}

std::optional<std::vector<int>> merge_index_loops(std::span<const int> a, std::span<const int> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n < 3 || m < 3) return std::nullopt;

  std::unordered_map<int, std::size_t> pos_b;
  pos_b.reserve(m * 2);
  for (std::size_t j = 0; j < m; ++j) pos_b.emplace(b[j], j);

  // a's edge i (a[i] -> a[i+1]) is shared when b holds a[i+1] -> a[i].
  std::vector<char> shared(n, 0);
  std::size_t shared_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = pos_b.find(a[i]);
    if (it == pos_b.end()) continue;
    if (b[(it->second + m - 1) % m] == a[(i + 1) % n]) {
      shared[i] = 1;
      ++shared_count;
    }
  }
  if (shared_count == 0 || shared_count >= n || shared_count >= m) return std::nullopt;

  std::size_t start = n;
  std::size_t chain_starts = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (shared[i] && !shared[(i + n - 1) % n]) {
      start = i;
      ++chain_starts;
    }
  }
  if (chain_starts != 1) return std::nullopt;

  const std::size_t k = shared_count;
  const int first = a[start];
  const std::size_t pb = pos_b.at(first);
  for (std::size_t i = 0; i <= k; ++i) {
    if (b[(pb + m - i) % m] != a[(start + i) % n]) return std::nullopt;
  }

  std::vector<int> out;
  out.reserve(n + m - 2 * k);
  for (std::size_t i = 0; i <= n - k; ++i) out.push_back(a[(start + k + i) % n]);  // last .. first
  for (std::size_t i = 1; i + k < m; ++i) out.push_back(b[(pb + i) % m]);            // after first .. before last

  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  return out;
}

Polygon merge_polygons(const Polygon& a, const Polygon& b) {
  std::map<std::pair<double, double>, int> ids;
  std::vector<Point2> points;
  auto id_of = [&](Point2 p) {
    auto [it, inserted] = ids.emplace(std::make_pair(p.x, p.y), static_cast<int>(points.size()));
    if (inserted) points.push_back(p);
    return it->second;
  };
  std::vector<int> la, lb;
  for (const auto& v : a.vertices()) la.push_back(id_of(v));
  for (const auto& v : b.vertices()) lb.push_back(id_of(v));

  const auto merged = merge_index_loops(la, lb);
  if (!merged) throw Error("not mergeable");
  std::vector<Point2> loop;
  loop.reserve(merged->size());
  for (int id : *merged) loop.push_back(points[static_cast<std::size_t>(id)]);

  const double expected = a.area() + b.area();
  if (std::abs(signed_area(loop) - expected) > 1e-9 * expected || !is_simple(loop)) {
    throw Error("not mergeable");
  }
  return Polygon(std::move(loop));
}

Polygon convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 p, Point2 q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw Error("degenerate polygon");

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return Polygon(std::move(hull));
}

Polygon random_convex_polygon(double width, double height, Rng& rng) {
  if (!(width > 0.0) || !(height > 0.0)) throw Error("bounds must be positive");
  constexpr int kSamplePoints = 12;
  const double min_area = 0.25 * width * height;
  std::vector<Point2> pts(kSamplePoints);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (auto& p : pts) {
      p.x = rng.uniform(0.1 * width, 0.9 * width);
      p.y = rng.uniform(0.1 * height, 0.9 * height);
    }
    try {
      Polygon hull = convex_hull(pts);
      if (hull.area() >= min_area) return hull;
    } catch (const Error&) {
      // collinear draw; resample
    }
  }
  throw Error("random_convex_polygon: no acceptable sample");
}

}  // namespace fresco::geometry
