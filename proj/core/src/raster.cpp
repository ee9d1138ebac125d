#include "fresco/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fresco/error.hpp"
#include "geometry_internal.hpp"

namespace fresco::raster {

RasterMask::RasterMask(PixelRect box) : box_(box) {
  if (box.width < 0 || box.height < 0) throw Error("negative mask dimensions");
  alpha_.assign(static_cast<std::size_t>(box.width) * box.height, 0.0f);
}

RasterMask::RasterMask(PixelRect box, std::vector<float> alpha) : box_(box), alpha_(std::move(alpha)) {
  if (box.width < 0 || box.height < 0) throw Error("negative mask dimensions");
  if (alpha_.size() != static_cast<std::size_t>(box.width) * box.height) throw Error("mask size mismatch");
  for (float a : alpha_) {
    if (!(a >= 0.0f && a <= 1.0f)) throw Error("mask alpha outside [0,1]");
  }
}

float RasterMask::at_global(int gx, int gy) const {
  const int c = gx - box_.x;
  const int r = gy - box_.y;
  if (c < 0 || r < 0 || c >= box_.width || r >= box_.height) return 0.0f;
  return at(c, r);
}

std::size_t RasterMask::count() const {
  return static_cast<std::size_t>(std::count_if(alpha_.begin(), alpha_.end(), [](float a) { return a > 0.0f; }));
}

RasterMask RasterMask::trimmed() const {
  int x0 = box_.width, y0 = box_.height, x1 = -1, y1 = -1;
  for (int r = 0; r < box_.height; ++r) {
    for (int c = 0; c < box_.width; ++c) {
      if (at(c, r) > 0.0f) {
        x0 = std::min(x0, c);
        x1 = std::max(x1, c);
        y0 = std::min(y0, r);
        y1 = std::max(y1, r);
      }
    }
  }
  if (x1 < 0) return *this;
  RasterMask out({box_.x + x0, box_.y + y0, x1 - x0 + 1, y1 - y0 + 1});
  for (int r = y0; r <= y1; ++r) {
    for (int c = x0; c <= x1; ++c) out.set(c - x0, r - y0, at(c, r));
  }
  return out;
}

Image::Image(int w, int h, Rgba fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw Error("negative image dimensions");
  rgba.resize(static_cast<std::size_t>(w) * h * 4);
  for (std::size_t i = 0; i < rgba.size(); i += 4) std::copy(fill.begin(), fill.end(), rgba.begin() + i);
}

RasterMask rasterize_polygon(const geometry::Polygon& p, const geometry::Rect& crop) {
  const geometry::Rect b = p.bounds();
  // Pixel i is a candidate when its centre i + 0.5 lies in both ranges.
  const int x_lo = static_cast<int>(std::ceil(std::max(b.x, crop.x) - 0.5));
  const int x_hi = static_cast<int>(std::ceil(std::min(b.right(), crop.right()) - 0.5));  // exclusive
  const int y_lo = static_cast<int>(std::ceil(std::max(b.y, crop.y) - 0.5));
  const int y_hi = static_cast<int>(std::ceil(std::min(b.bottom(), crop.bottom()) - 0.5));
  if (x_hi <= x_lo || y_hi <= y_lo) throw Error("sub-pixel fragment");

  RasterMask mask({x_lo, y_lo, x_hi - x_lo, y_hi - y_lo});
  const auto& v = p.vertices();
  std::vector<double> xs;
  std::size_t filled = 0;
  for (int row = y_lo; row < y_hi; ++row) {
    const double yc = row + 0.5;
    xs.clear();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
      if (geometry::detail::edge_spans_row(v[j], v[i], yc)) xs.push_back(geometry::detail::edge_x_at(v[j], v[i], yc));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      const int c0 = std::max(x_lo, static_cast<int>(std::ceil(xs[k] - 0.5)));
      const int c1 = std::min(x_hi, static_cast<int>(std::ceil(xs[k + 1] - 0.5)));
      for (int c = c0; c < c1; ++c) {
        mask.set(c - x_lo, row - y_lo, 1.0f);
        ++filled;
      }
    }
  }
  if (filled == 0) throw Error("sub-pixel fragment");
  return mask;
}

namespace {

double normalize_degrees(double deg) {
  double d = std::fmod(deg, 360.0);
  if (d < 0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

// Exact remap for quarter turns. Source (x, y) maps to:
//   90: (y, w-1-x)   180: (w-1-x, h-1-y)   270: (h-1-y, x)
FragmentImage rotate_quarter(const FragmentImage& f, int quarters, double total_deg) {
  const int w = f.pixels.width, h = f.pixels.height;
  const bool swap = quarters % 2 == 1;
  const int ow = swap ? h : w, oh = swap ? w : h;
  FragmentImage out;
  out.fragment_id = f.fragment_id;
  out.rotation_deg = total_deg;
  out.pixels = Image(ow, oh);
  const auto& box = f.mask.box();
  out.mask = RasterMask({box.x + (w - ow) / 2, box.y + (h - oh) / 2, ow, oh});
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int ox = x, oy = y;
      switch (quarters) {
        case 1: ox = y; oy = w - 1 - x; break;
        case 2: ox = w - 1 - x; oy = h - 1 - y; break;
        case 3: ox = h - 1 - y; oy = x; break;
        default: break;
      }
      std::copy_n(f.pixels.px(x, y), 4, out.pixels.px(ox, oy));
      out.mask.set(ox, oy, f.mask.at(x, y));
    }
  }
  return out;
}

}  // namespace

FragmentImage rotate_fragment(const FragmentImage& f, double degrees) {
  const double total = normalize_degrees(f.rotation_deg + degrees);
  const double d = normalize_degrees(degrees);
  if (d == 0.0) {
    FragmentImage out = f;
    out.rotation_deg = total;
    return out;
  }
  if (std::fmod(d, 90.0) == 0.0) return rotate_quarter(f, static_cast<int>(d / 90.0), total);

  const int w = f.pixels.width, h = f.pixels.height;
  const double theta = d * std::numbers::pi / 180.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const int ow = std::max(1, static_cast<int>(std::ceil(std::abs(w * c) + std::abs(h * s) - 1e-9)));
  const int oh = std::max(1, static_cast<int>(std::ceil(std::abs(w * s) + std::abs(h * c) - 1e-9)));

  // Fill colour is taken from the first background pixel, if any.
  Rgba fill = kDefaultFill;
  for (int y = 0, found = 0; y < h && !found; ++y) {
    for (int x = 0; x < w; ++x) {
      if (f.mask.at(x, y) == 0.0f) {
        std::copy_n(f.pixels.px(x, y), 4, fill.begin());
        fill[3] = 0;
        found = 1;
        break;
      }
    }
  }

  FragmentImage out;
  out.fragment_id = f.fragment_id;
  out.rotation_deg = total;
  out.pixels = Image(ow, oh, fill);
  const auto& box = f.mask.box();
  out.mask = RasterMask({box.x + (w - ow) / 2, box.y + (h - oh) / 2, ow, oh});

  const double icx = 0.5 * w, icy = 0.5 * h, ocx = 0.5 * ow, ocy = 0.5 * oh;
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      // Inverse of the forward map x' = x c + y s, y' = -x s + y c.
      const double u = ox + 0.5 - ocx, v = oy + 0.5 - ocy;
      const double sx = u * c - v * s + icx - 0.5;
      const double sy = u * s + v * c + icy - 0.5;
      const int x0 = static_cast<int>(std::floor(sx)), y0 = static_cast<int>(std::floor(sy));
      const double fx = sx - x0, fy = sy - y0;
      double alpha = 0.0, weight = 0.0;
      double rgb[3] = {0.0, 0.0, 0.0};
      for (int k = 0; k < 4; ++k) {
        const int xx = x0 + (k & 1), yy = y0 + (k >> 1);
        if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
        const double wk = ((k & 1) ? fx : 1.0 - fx) * ((k >> 1) ? fy : 1.0 - fy);
        const double a = f.mask.at(xx, yy);
        alpha += wk * a;
        weight += wk * a;
        const auto* p = f.pixels.px(xx, yy);
        for (int ch = 0; ch < 3; ++ch) rgb[ch] += wk * a * p[ch];
      }
      if (alpha >= 0.5 && weight > 0.0) {
        auto* q = out.pixels.px(ox, oy);
        for (int ch = 0; ch < 3; ++ch) {
          q[ch] = static_cast<std::uint8_t>(std::clamp(std::lround(rgb[ch] / weight), 0L, 255L));
        }
        q[3] = 255;
        out.mask.set(ox, oy, 1.0f);
      }
    }
  }
  return out;
}

FragmentImage extract_fragment(const Image& source, const Region& region, Rgba fill, double rotation_deg,
                               std::string fragment_id) {
  RasterMask mask;
  if (const auto* poly = std::get_if<geometry::Polygon>(&region)) {
    try {
      mask = rasterize_polygon(*poly, {0.0, 0.0, static_cast<double>(source.width), static_cast<double>(source.height)});
    } catch (const Error&) {
      throw Error("empty fragment");
    }
  } else {
    const auto& given = std::get<RasterMask>(region);
    if (given.empty()) throw Error("empty fragment");
    mask = given.trimmed();
  }
  const auto& box = mask.box();
  if (box.x < 0 || box.y < 0 || box.right() > source.width || box.bottom() > source.height) {
    throw Error("region outside source");
  }

  FragmentImage out;
  out.fragment_id = std::move(fragment_id);
  out.pixels = Image(box.width, box.height, fill);
  for (int r = 0; r < box.height; ++r) {
    for (int c = 0; c < box.width; ++c) {
      const float a = mask.at(c, r);
      if (a <= 0.0f) continue;
      auto* q = out.pixels.px(c, r);
      std::copy_n(source.px(box.x + c, box.y + r), 3, q);
      q[3] = static_cast<std::uint8_t>(std::lround(255.0f * a));
    }
  }
  out.mask = std::move(mask);
  if (rotation_deg != 0.0) return rotate_fragment(out, rotation_deg);
  return out;
}

}  // namespace fresco::raster
