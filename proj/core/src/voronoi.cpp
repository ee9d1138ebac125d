#include <algorithm>
#include <cmath>
#include <limits>

#include "fresco/error.hpp"
#include "fresco/geometry.hpp"

namespace fresco::geometry {

namespace {

// Uniform bucket grid over the sites. A query scans Chebyshev rings of
// buckets outwards and stops once the next ring cannot hold anything closer.
class SiteGrid {
 public:
  SiteGrid(std::span<const Point2> sites, double x0, double y0, double x1, double y1) : sites_(sites) {
    const double area = std::max((x1 - x0) * (y1 - y0), 1.0);
    cell_ = std::max(1.0, std::sqrt(area / static_cast<double>(sites.size())));
    x0_ = x0;
    y0_ = y0;
    nx_ = std::max(1, static_cast<int>(std::ceil((x1 - x0) / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::ceil((y1 - y0) / cell_)) + 1);
    start_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    for (const auto& s : sites) ++start_[bucket_of(s) + 1];
    for (std::size_t i = 1; i < start_.size(); ++i) start_[i] += start_[i - 1];
    members_.resize(sites.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < sites.size(); ++i) members_[fill[bucket_of(sites[i])]++] = static_cast<int>(i);
  }

  int nearest(double qx, double qy) const {
    const int bx = std::clamp(static_cast<int>((qx - x0_) / cell_), 0, nx_ - 1);
    const int by = std::clamp(static_cast<int>((qy - y0_) / cell_), 0, ny_ - 1);
    double best = std::numeric_limits<double>::infinity();
    int best_index = -1;
    const int max_ring = std::max(nx_, ny_);
    for (int r = 0; r <= max_ring; ++r) {
      for (int gy = by - r; gy <= by + r; ++gy) {
        if (gy < 0 || gy >= ny_) continue;
        const bool edge_row = (gy == by - r || gy == by + r);
        for (int gx = bx - r; gx <= bx + r; gx += (edge_row || r == 0) ? 1 : 2 * r) {
          if (gx < 0 || gx >= nx_) continue;
          const std::size_t b = static_cast<std::size_t>(gy) * nx_ + gx;
          for (int k = start_[b]; k < start_[b + 1]; ++k) {
            const int i = members_[k];
            const Point2& s = sites_[static_cast<std::size_t>(i)];
            const double dx = s.x - qx;
            const double dy = s.y - qy;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best || (d2 == best && i < best_index)) {
              best = d2;
              best_index = i;
            }
          }
        }
      }
      if (best_index >= 0) {
        // Distance from the query to the outside of the (2r+1)^2 block.
        const double gap = std::min({qx - (x0_ + (bx - r) * cell_), x0_ + (bx + r + 1) * cell_ - qx,
                                     qy - (y0_ + (by - r) * cell_), y0_ + (by + r + 1) * cell_ - qy});
        if (gap > 0 && gap * gap > best) break;
      }
    }
    return best_index;
  }

 private:
  std::size_t bucket_of(const Point2& p) const {
    const int gx = std::clamp(static_cast<int>((p.x - x0_) / cell_), 0, nx_ - 1);
    const int gy = std::clamp(static_cast<int>((p.y - y0_) / cell_), 0, ny_ - 1);
    return static_cast<std::size_t>(gy) * nx_ + gx;
  }

  std::span<const Point2> sites_;
  double cell_ = 1.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  int nx_ = 1;
  int ny_ = 1;
  std::vector<int> start_;
  std::vector<int> members_;
};

}  // namespace

LabelRaster voronoi_labels(std::span<const Point2> sites, int width, int height) {
  if (width <= 0 || height <= 0) throw Error("raster dimensions must be positive");
  if (sites.empty()) throw Error("no sites");
  bool any_inside = false;
  double x0 = 0.0, y0 = 0.0, x1 = width, y1 = height;
  for (const auto& s : sites) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y)) throw Error("non-finite site");
    any_inside |= s.x >= 0 && s.x < width && s.y >= 0 && s.y < height;
    x0 = std::min(x0, s.x);
    y0 = std::min(y0, s.y);
    x1 = std::max(x1, s.x);
    y1 = std::max(y1, s.y);
  }
  if (!any_inside) throw Error("no site inside raster");
  {
    std::vector<Point2> sorted(sites.begin(), sites.end());
    std::sort(sorted.begin(), sorted.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate sites");
  }

  const SiteGrid grid(sites, x0, y0, x1, y1);
  LabelRaster out;
  out.width = width;
  out.height = height;
  out.labels.resize(static_cast<std::size_t>(width) * height);
  std::vector<char> owned(sites.size(), 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int label = grid.nearest(x + 0.5, y + 0.5);
      out.labels[static_cast<std::size_t>(y) * width + x] = label;
      owned[static_cast<std::size_t>(label)] = 1;
    }
  }
  if (std::find(owned.begin(), owned.end(), 0) != owned.end()) throw Error("empty voronoi cell");
  return out;
}

}  // namespace fresco::geometry
