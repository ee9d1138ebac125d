#pragma once

// Slow reference implementations. None of these call into fresco.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

struct P {
  double x, y;
};

// Area as a fan of triangles from vertex 0, each measured with Heron's formula
// and signed by its orientation.
inline double fan_area(const std::vector<P>& v) {
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const P a = v[0], b = v[i], c = v[i + 1];
    const double ab = std::hypot(b.x - a.x, b.y - a.y);
    const double bc = std::hypot(c.x - b.x, c.y - b.y);
    const double ca = std::hypot(a.x - c.x, a.y - c.y);
    const double s = 0.5 * (ab + bc + ca);
    const double heron = std::sqrt(std::max(0.0, s * (s - ab) * (s - bc) * (s - ca)));
    const double turn = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    total += turn >= 0 ? heron : -heron;
  }
  return total;
}

// True when p lies strictly inside the circumcircle of (a, b, c), by explicit
// circumcentre. `rel` shrinks the radius to absorb rounding.
inline bool strictly_in_circumcircle(P a, P b, P c, P p, double rel = 1e-9) {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double a2 = a.x * a.x + a.y * a.y, b2 = b.x * b.x + b.y * b.y, c2 = c.x * c.x + c.y * c.y;
  const double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
  const double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
  const double r2 = (a.x - ux) * (a.x - ux) + (a.y - uy) * (a.y - uy);
  const double q2 = (p.x - ux) * (p.x - ux) + (p.y - uy) * (p.y - uy);
  return q2 < r2 * (1.0 - rel);
}

// Exhaustive nearest site for a query; exact ties go to the lowest index.
inline int nearest_site(const std::vector<P>& sites, double qx, double qy) {
  int best = 0;
  double best_d = INFINITY;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double dx = sites[i].x - qx, dy = sites[i].y - qy;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

// Binary grid, row-major; cells outside count as background.
struct Grid {
  int w = 0, h = 0;
  std::vector<std::uint8_t> v;
  Grid(int w_, int h_) : w(w_), h(h_), v(static_cast<std::size_t>(w_) * h_, 0) {}
  bool at(int x, int y) const { return x >= 0 && y >= 0 && x < w && y < h && v[static_cast<std::size_t>(y) * w + x]; }
  void set(int x, int y, bool b) { v[static_cast<std::size_t>(y) * w + x] = b ? 1 : 0; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto c : v) n += c;
    return n;
  }
};

// Minimum over the disc neighbourhood {dx^2 + dy^2 <= r^2}.
inline Grid erode(const Grid& g, int r) {
  Grid out(g.w, g.h);
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) {
      bool keep = g.at(x, y);
      for (int dy = -r; keep && dy <= r; ++dy) {
        for (int dx = -r; keep && dx <= r; ++dx) {
          if (dx * dx + dy * dy <= r * r && !g.at(x + dx, y + dy)) keep = false;
        }
      }
      out.set(x, y, keep);
    }
  }
  return out;
}

// Maximum over the disc neighbourhood, on the same grid (no growth).
inline Grid dilate(const Grid& g, int r) {
  Grid out(g.w, g.h);
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) {
      bool hit = false;
      for (int dy = -r; !hit && dy <= r; ++dy) {
        for (int dx = -r; !hit && dx <= r; ++dx) {
          if (dx * dx + dy * dy <= r * r && g.at(x + dx, y + dy)) hit = true;
        }
      }
      out.set(x, y, hit);
    }
  }
  return out;
}

// Winding number of a closed loop around q. Only meaningful off the boundary.
inline int winding(const std::vector<P>& v, P q) {
  int wn = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P a = v[i], b = v[(i + 1) % v.size()];
    const double side = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
    if (a.y <= q.y) {
      if (b.y > q.y && side > 0) ++wn;
    } else if (b.y <= q.y && side < 0) {
      --wn;
    }
  }
  return wn;
}

// Pixel centres (x+0.5, y+0.5) with non-zero winding, over a w x h raster.
inline std::size_t pixel_centre_count(const std::vector<P>& v, int w, int h) {
  std::size_t n = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) n += winding(v, {x + 0.5, y + 0.5}) != 0;
  }
  return n;
}

// Metrics straight from a K x K confusion matrix.
struct Report {
  std::vector<double> accuracy, precision, recall;
  double overall = 0, macro_p = 0, macro_r = 0, f1 = 0;
};

inline Report metrics(const std::vector<int>& truth, const std::vector<int>& pred, int K) {
  std::vector<std::vector<long>> m(K, std::vector<long>(K, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) ++m[truth[i] - 1][pred[i] - 1];
  const double n = static_cast<double>(truth.size());
  Report r;
  long diag = 0;
  for (int k = 0; k < K; ++k) {
    long row = 0, col = 0;
    for (int j = 0; j < K; ++j) {
      row += m[k][j];
      col += m[j][k];
    }
    const long tp = m[k][k];
    diag += tp;
    const long fp = col - tp, fn = row - tp;
    const long tn = static_cast<long>(truth.size()) - tp - fp - fn;
    r.accuracy.push_back((tp + tn) / n);
    r.precision.push_back(col ? static_cast<double>(tp) / col : 0.0);
    r.recall.push_back(row ? static_cast<double>(tp) / row : 0.0);
  }
  r.overall = diag / n;
  for (int k = 0; k < K; ++k) {
    r.macro_p += r.precision[k] / K;
    r.macro_r += r.recall[k] / K;
  }
  r.f1 = r.macro_p + r.macro_r > 0 ? 2 * r.macro_p * r.macro_r / (r.macro_p + r.macro_r) : 0.0;
  return r;
}

// Population moments, two passes.
inline std::pair<double, double> mean_variance(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / xs.size()};
}

}  // namespace oracle
