#include <algorithm>
#include <numeric>
#include <string_view>
#include <utility>

#include "fresco/error.hpp"
#include "fresco/geometry.hpp"

namespace fresco::geometry {

namespace {

constexpr double kIncircleRelTolerance = 1e-12;

// Sign of the incircle determinant for counter-clockwise (a, b, c): +1 when d
// is strictly inside the circumcircle, 0 when co-circular within tolerance.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                     clift * (adx * bdy - bdx * ady);
  const double permanent = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy)) +
                           blift * (std::abs(cdx * ady) + std::abs(adx * cdy)) +
                           clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
  if (std::abs(det) <= kIncircleRelTolerance * permanent) return 0;
  return det > 0 ? 1 : -1;
}

inline int next_edge(int e) { return e % 3 == 2 ? e - 2 : e + 1; }
inline int prev_edge(int e) { return e % 3 == 0 ? e + 2 : e - 1; }

// Half-edge mesh: half-edge e runs from tri[e] to tri[next_edge(e)] and
// opp[e] is its twin, or -1 on the hull. Triangles are counter-clockwise.
class SweepMesh {
 public:
  explicit SweepMesh(std::span<const Point2> pts)
      : pts_(pts), hull_next_(pts.size(), -1), hull_prev_(pts.size(), -1), hull_edge_(pts.size(), -1) {
    tri_.reserve(pts.size() * 6);
    opp_.reserve(pts.size() * 6);
  }

  void build(const std::vector<int>& order) {
    const std::size_t n = order.size();
    std::size_t k = 2;
    while (k < n && orient(pt(order[0]), pt(order[1]), pt(order[k])) == 0.0) ++k;
    if (k == n) throw Error("insufficient points: all collinear");

    // Fan the collinear prefix order[0..k-1] onto order[k].
    const int apex = order[k];
    const bool ccw = orient(pt(order[0]), pt(order[1]), pt(apex)) > 0;
    int prev_shared = -1;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const int u = order[i], w = order[i + 1];
      int t;
      if (ccw) {
        t = add_triangle(u, w, apex);
        link(t + 2, prev_shared);  // apex -> u
        prev_shared = t + 1;       // w -> apex
      } else {
        t = add_triangle(w, u, apex);
        link(t + 1, prev_shared);  // u -> apex
        prev_shared = t + 2;       // apex -> w
      }
    }
    init_hull();

    int last = apex;
    for (std::size_t i = k + 1; i < n; ++i) {
      insert(order[i], last);
      last = order[i];
    }
  }

  void settle_cocircular_ties() {
    for (int pass = 0; pass < 1000; ++pass) {
      bool flipped = false;
      for (int a = 0; a < static_cast<int>(tri_.size()); ++a) {
        const int b = opp_[a];
        if (b < a) continue;
        const int ar = prev_edge(a);
        const int bl = prev_edge(b);
        const int p0 = tri_[ar], pr = tri_[a], pl = tri_[next_edge(a)], p1 = tri_[bl];
        if (incircle(pt(p0), pt(pr), pt(pl), pt(p1)) != 0) continue;
        if (orient(pt(p0), pt(pr), pt(p1)) <= 0 || orient(pt(p1), pt(pl), pt(p0)) <= 0) continue;
        const auto current = std::minmax(pr, pl);
        const auto alternative = std::minmax(p0, p1);
        if (alternative < current) {
          flip(a);
          flipped = true;
        }
      }
      if (!flipped) return;
    }
  }

  Triangulation result() const {
    Triangulation out;
    out.points.assign(pts_.begin(), pts_.end());
    const std::size_t count = tri_.size() / 3;
    out.simplices.resize(count);
    out.adjacency.resize(count);
    for (std::size_t t = 0; t < count; ++t) {
      for (int i = 0; i < 3; ++i) {
        const int e = static_cast<int>(3 * t) + i;
        out.simplices[t][i] = tri_[e];
        out.adjacency[t][i] = opp_[e] < 0 ? -1 : opp_[e] / 3;
      }
    }
    return out;
  }

 private:
  Point2 pt(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  int add_triangle(int a, int b, int c) {
    const int t = static_cast<int>(tri_.size());
    tri_.insert(tri_.end(), {a, b, c});
    opp_.insert(opp_.end(), {-1, -1, -1});
    return t;
  }

  void link(int e, int o) {
    opp_[e] = o;
    if (o >= 0) opp_[o] = e;
  }

  void init_hull() {
    // Hull boundary half-edges are those with no twin.
    for (int e = 0; e < static_cast<int>(tri_.size()); ++e) {
      if (opp_[e] >= 0) continue;
      const int from = tri_[e], to = tri_[next_edge(e)];
      hull_next_[from] = to;
      hull_prev_[to] = from;
      hull_edge_[from] = e;
    }
  }

  bool visible(int from, int to, int p) const { return orient(pt(from), pt(to), pt(p)) < 0; }

  void insert(int p, int last) {
    int v = last;
    if (visible(v, hull_next_[v], p)) {
      while (visible(hull_prev_[v], v, p)) v = hull_prev_[v];
    } else if (visible(hull_prev_[v], v, p)) {
      v = hull_prev_[v];
      while (visible(hull_prev_[v], v, p)) v = hull_prev_[v];
    } else {
      // Not expected for x-sorted input; fall back to a full hull scan.
      int s = last;
      do {
        if (visible(s, hull_next_[s], p) && !visible(hull_prev_[s], s, p)) break;
        s = hull_next_[s];
      } while (s != last);
      if (!visible(s, hull_next_[s], p)) throw Error("delaunay: point not outside hull");
      v = s;
    }

    const int first = v;
    int prev_spoke = -1;  // half-edge p -> v of the previous fan triangle
    std::vector<int> to_legalize;
    while (visible(v, hull_next_[v], p)) {
      const int w = hull_next_[v];
      const int t = add_triangle(v, p, w);
      link(t + 2, hull_edge_[v]);  // w -> v is the twin of the old hull edge
      link(t, prev_spoke);         // v -> p pairs with the previous p -> v
      prev_spoke = t + 1;          // p -> w
      if (v == first) hull_edge_[first] = t;
      to_legalize.push_back(t + 2);
      if (v != first) {
        hull_next_[v] = hull_prev_[v] = -1;
        hull_edge_[v] = -1;
      }
      v = w;
    }
    const int end = v;
    hull_next_[first] = p;
    hull_prev_[p] = first;
    hull_next_[p] = end;
    hull_prev_[end] = p;
    hull_edge_[p] = prev_spoke;

    for (int e : to_legalize) legalize(e);
  }

  // Flips the edge shared by the triangles of half-edge a and its twin.
  void flip(int a) {
    const int b = opp_[a];
    const int ar = prev_edge(a);
    const int bl = prev_edge(b);
    const int p0 = tri_[ar];
    const int p1 = tri_[bl];
    tri_[a] = p1;
    tri_[b] = p0;
    const int hbl = opp_[bl];
    const int har = opp_[ar];
    link(a, hbl);
    link(b, har);
    link(ar, bl);
    if (hbl < 0) hull_edge_[tri_[a]] = a;
    if (har < 0) hull_edge_[tri_[b]] = b;
  }

  void legalize(int start) {
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      const int b = opp_[a];
      if (b < 0) continue;
      const int ar = prev_edge(a);
      const int bl = prev_edge(b);
      const int p0 = tri_[ar], pr = tri_[a], pl = tri_[next_edge(a)], p1 = tri_[bl];
      if (incircle(pt(p0), pt(pr), pt(pl), pt(p1)) <= 0) continue;
      const int br = next_edge(b);
      flip(a);
      stack.push_back(br);
      stack.push_back(a);
    }
  }

  std::span<const Point2> pts_;
  std::vector<int> tri_;
  std::vector<int> opp_;
  std::vector<int> hull_next_;
  std::vector<int> hull_prev_;
  std::vector<int> hull_edge_;
};

}  // namespace

Triangulation delaunay_triangulate(std::span<const Point2> points) {
  if (points.size() < 3) throw Error("insufficient points");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error("non-finite point");
  }
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const auto& p = points[static_cast<std::size_t>(i)];
    const auto& q = points[static_cast<std::size_t>(j)];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return i < j;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points[static_cast<std::size_t>(order[i])] == points[static_cast<std::size_t>(order[i - 1])]) {
      throw Error("duplicate points");
    }
  }

  SweepMesh mesh(points);
  try {
    mesh.build(order);
  } catch (const Error& e) {
    if (std::string_view(e.what()).starts_with("insufficient points")) throw Error("insufficient points");
    throw;
  }
  mesh.settle_cocircular_ties();
  return mesh.result();
}

}  // namespace fresco::geometry
