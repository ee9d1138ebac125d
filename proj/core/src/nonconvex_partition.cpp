#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "fragmenters_internal.hpp"
#include "fresco/error.hpp"

namespace fresco::fragmenters {

namespace {

struct Piece {
  std::vector<int> loop;  // counter-clockwise vertex ids into the point set
  double area = 0.0;
  std::vector<int> neighbours;  // sorted piece ids
  bool alive = true;
};

class Merger {
 public:
  Merger(const geometry::Triangulation& tri) : points_(tri.points) {
    pieces_.resize(tri.simplices.size());
    for (std::size_t t = 0; t < tri.simplices.size(); ++t) {
      auto& p = pieces_[t];
      p.loop.assign(tri.simplices[t].begin(), tri.simplices[t].end());
      p.area = area_of(p.loop);
      for (int n : tri.adjacency[t]) {
        if (n >= 0) p.neighbours.push_back(n);
      }
      std::sort(p.neighbours.begin(), p.neighbours.end());
      by_area_.emplace(p.area, static_cast<int>(t));
    }
    alive_ = pieces_.size();
  }

  std::size_t alive() const { return alive_; }

  // Globally smallest piece with its smallest valid neighbour; falls through
  // to the next-smallest piece when every merge of the smallest would leave a
  // non-simple outline.
  void merge_smallest() {
    for (const auto& [area, id] : by_area_) {
      std::vector<int> order = pieces_[id].neighbours;
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(pieces_[a].area, a) < std::pair(pieces_[b].area, b);
      });
      for (int n : order) {
        if (try_merge(id, n)) return;
      }
    }
    throw Error("nonconvex partition: no valid merge left");
  }

  void merge_random(Rng& rng) {
    std::vector<int> candidates;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (pieces_[i].alive) candidates.push_back(static_cast<int>(i));
    }
    while (!candidates.empty()) {
      const std::size_t pick = rng.below(candidates.size());
      const int id = candidates[pick];
      std::vector<int> order = pieces_[id].neighbours;
      while (!order.empty()) {
        const std::size_t k = rng.below(order.size());
        if (try_merge(id, order[k])) return;
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(k));
      }
      candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    throw Error("nonconvex partition: no valid merge left");
  }

  std::vector<geometry::Polygon> polygons() const {
    std::vector<geometry::Polygon> out;
    for (const auto& p : pieces_) {
      if (!p.alive) continue;
      std::vector<geometry::Point2> loop;
      loop.reserve(p.loop.size());
      for (int v : p.loop) loop.push_back(points_[static_cast<std::size_t>(v)]);
      out.emplace_back(std::move(loop));
    }
    return out;
  }

 private:
  double area_of(const std::vector<int>& loop) const {
    std::vector<geometry::Point2> pts;
    pts.reserve(loop.size());
    for (int v : loop) pts.push_back(points_[static_cast<std::size_t>(v)]);
    return geometry::signed_area(pts);
  }

  // Merges `other` into `keep`; false when the union would not be simple.
  bool try_merge(int keep, int other) {
    auto merged = geometry::merge_index_loops(pieces_[keep].loop, pieces_[other].loop);
    if (!merged) return false;

    auto& a = pieces_[keep];
    auto& b = pieces_[other];
    by_area_.erase({a.area, keep});
    by_area_.erase({b.area, other});
    a.loop = std::move(*merged);
    a.area += b.area;
    by_area_.emplace(a.area, keep);

    std::vector<int> joined;
    std::set_union(a.neighbours.begin(), a.neighbours.end(), b.neighbours.begin(), b.neighbours.end(),
                   std::back_inserter(joined));
    std::erase_if(joined, [&](int n) { return n == keep || n == other; });
    a.neighbours = std::move(joined);
    for (int n : b.neighbours) {
      if (n == keep) continue;
      auto& nb = pieces_[n].neighbours;
      std::erase(nb, other);
      if (!std::binary_search(nb.begin(), nb.end(), keep)) nb.insert(std::lower_bound(nb.begin(), nb.end(), keep), keep);
    }
    b.alive = false;
    b.loop.clear();
    b.neighbours.clear();
    --alive_;
    return true;
  }

  const std::vector<geometry::Point2>& points_;
  std::vector<Piece> pieces_;
  std::set<std::pair<double, int>> by_area_;
  std::size_t alive_ = 0;
};

}  // namespace

FragmentSet fragment_nonconvex_partition(int width, int height, const FragmentationConfig& config) {
  detail::require_method(config, Method::NonConvexPartition);
  detail::require_dimensions(width, height);
  if (config.target_count < 1) throw InputError("target_count must be >= 1");
  if (!(config.point_multiplier > 1.0)) throw InputError("point_multiplier must be > 1");
  Rng rng(config.seed);

  const auto requested = static_cast<std::size_t>(std::ceil(config.point_multiplier * config.target_count));
  const std::size_t point_count = std::max<std::size_t>(requested, 4);
  const double w = width, h = height;
  std::vector<geometry::Point2> points{{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}};
  points.reserve(point_count);
  while (points.size() < point_count) {
    const geometry::Point2 p{rng.uniform(0.0, w), rng.uniform(0.0, h)};
    if (p.x <= 0.0 || p.y <= 0.0) continue;  // keep the hull edges free of extra vertices
    points.push_back(p);
  }

  const geometry::Triangulation tri = geometry::delaunay_triangulate(points);
  const auto target = static_cast<std::size_t>(config.target_count);
  if (target > tri.simplices.size()) throw InputError("too many fragments requested");

  Merger merger(tri);
  while (merger.alive() > target) {
    if (config.prioritize_small) {
      merger.merge_smallest();
    } else {
      merger.merge_random(rng);
    }
  }

  FragmentSet out;
  out.method = Method::NonConvexPartition;
  out.crop_rect = {0, 0, width, height};
  auto polys = merger.polygons();
  out.fragments.reserve(polys.size());
  for (auto& poly : polys) {
    Fragment f{detail::local_id(out.fragments.size(), polys.size()), std::move(poly), 0.0};
    if (config.rotate_fragments) f.rotation_deg = rng.uniform(0.0, 360.0);
    out.fragments.push_back(std::move(f));
  }
  return out;
}

}  // namespace fresco::fragmenters
