#include <algorithm>
#include <limits>
#include <vector>

#include "fresco/error.hpp"
#include "fresco/raster.hpp"

namespace fresco::raster {

namespace {

constexpr double kFar = 1e20;

// 1-D squared distance transform of a sampled function (Felzenszwalb &
// Huttenlocher lower envelope of parabolas).
void dt1d(const double* f, double* d, int n, int* v, double* z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * (q - v[k]));
    while (s <= z[k]) {
      --k;
      s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * (q - v[k]));
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

// Squared Euclidean distance from each cell to the nearest cell where
// `source` is set. Grid is w x h, row-major.
std::vector<double> squared_distance_to(const std::vector<char>& source, int w, int h) {
  std::vector<double> g(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) g[i] = source[i] ? 0.0 : kFar;
  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = g[static_cast<std::size_t>(y) * w + x];
    dt1d(f.data(), d.data(), h, v.data(), z.data());
    for (int y = 0; y < h; ++y) g[static_cast<std::size_t>(y) * w + x] = d[y];
  }
  for (int y = 0; y < h; ++y) {
    double* row = &g[static_cast<std::size_t>(y) * w];
    std::copy_n(row, w, f.begin());
    dt1d(f.data(), row, w, v.data(), z.data());
  }
  return g;
}

// Support of m copied into a grid padded by `pad` on every side.
std::vector<char> padded_support(const RasterMask& m, int pad, int& w, int& h) {
  w = m.width() + 2 * pad;
  h = m.height() + 2 * pad;
  std::vector<char> s(static_cast<std::size_t>(w) * h, 0);
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (m.at(c, r) > 0.0f) s[static_cast<std::size_t>(r + pad) * w + c + pad] = 1;
    }
  }
  return s;
}

}  // namespace

RasterMask erode_mask(const RasterMask& m, int radius_px) {
  if (radius_px < 0) throw Error("negative erosion radius");
  if (m.empty()) throw Error("mask vanished");
  if (radius_px == 0) return m;

  int w = 0, h = 0;
  auto support = padded_support(m, 1, w, h);
  for (auto& s : support) s = !s;
  const auto dist = squared_distance_to(support, w, h);

  const double r2 = double(radius_px) * radius_px;
  RasterMask out(m.box());
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (dist[static_cast<std::size_t>(r + 1) * w + c + 1] > r2) out.set(c, r, m.at(c, r));
    }
  }
  if (out.empty()) throw Error("mask vanished");
  return out;
}

RasterMask dilate_mask(const RasterMask& m, int radius_px) {
  if (radius_px < 0) throw Error("negative dilation radius");
  if (radius_px == 0) return m;
  int w = 0, h = 0;
  const auto support = padded_support(m, radius_px, w, h);
  const auto dist = squared_distance_to(support, w, h);
  const double r2 = double(radius_px) * radius_px;
  RasterMask out({m.x() - radius_px, m.y() - radius_px, w, h});
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (dist[static_cast<std::size_t>(r) * w + c] <= r2) out.set(c, r, 1.0f);
    }
  }
  return out;
}

RasterMask open_mask(const RasterMask& m, int radius_px) {
  RasterMask eroded;
  try {
    eroded = erode_mask(m, radius_px);
  } catch (const Error&) {
    return RasterMask(m.box());
  }
  RasterMask grown = dilate_mask(eroded, radius_px);
  // Binarise and return on the original box; opening never leaves it.
  RasterMask out(m.box());
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      if (grown.at_global(m.x() + c, m.y() + r) > 0.0f) out.set(c, r, 1.0f);
    }
  }
  return out;
}

RasterMask close_mask(const RasterMask& m, int radius_px) {
  if (m.empty() || radius_px == 0) return m;
  const RasterMask grown = dilate_mask(m, radius_px);
  // The dilated box already has a radius-wide margin, so eroding it with the
  // outside treated as background is exact.
  return erode_mask(grown, radius_px);
}

RasterMask smooth_mask(const RasterMask& m) {
  if (m.empty()) throw Error("mask vanished");
  const RasterMask opened = open_mask(m, kSmoothingRadius);
  if (opened.empty()) throw Error("mask vanished");
  return close_mask(opened, kSmoothingRadius).trimmed();
}

}  // namespace fresco::raster
