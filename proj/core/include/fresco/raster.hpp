#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fresco/geometry.hpp"

namespace fresco::raster {

/// Integer pixel rectangle.
struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  int right() const { return x + width; }
  int bottom() const { return y + height; }
  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

/// Per-pixel alpha in [0, 1] over a bounding box placed at `origin` in
/// source-image coordinates. Masks emitted by the fragmenters are binary.
class RasterMask {
 public:
  RasterMask() = default;
  RasterMask(PixelRect box);
  RasterMask(PixelRect box, std::vector<float> alpha);

  const PixelRect& box() const { return box_; }
  int x() const { return box_.x; }
  int y() const { return box_.y; }
  int width() const { return box_.width; }
  int height() const { return box_.height; }

  float at(int col, int row) const { return alpha_[index(col, row)]; }
  void set(int col, int row, float a) { alpha_[index(col, row)] = a; }
  /// Alpha at source coordinates; 0 outside the box.
  float at_global(int gx, int gy) const;
  std::span<const float> alpha() const { return alpha_; }

  /// Number of pixels with alpha > 0.
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  /// Smallest box holding the support (unchanged if empty).
  RasterMask trimmed() const;

  friend bool operator==(const RasterMask&, const RasterMask&) = default;

 private:
  std::size_t index(int col, int row) const { return static_cast<std::size_t>(row) * box_.width + col; }

  PixelRect box_;
  std::vector<float> alpha_;
};

using Rgba = std::array<std::uint8_t, 4>;

/// 8-bit RGBA raster, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgba;

  Image() = default;
  Image(int w, int h, Rgba fill = {0, 0, 0, 255});

  std::uint8_t* px(int x, int y) { return &rgba[(static_cast<std::size_t>(y) * width + x) * 4]; }
  const std::uint8_t* px(int x, int y) const { return &rgba[(static_cast<std::size_t>(y) * width + x) * 4]; }
  friend bool operator==(const Image&, const Image&) = default;
};

inline constexpr Rgba kDefaultFill{128, 128, 128, 0};

struct FragmentImage {
  Image pixels;
  RasterMask mask;
  double rotation_deg = 0.0;
  std::string fragment_id;
};

using Region = std::variant<geometry::Polygon, RasterMask>;

/// Pixel-centre rasterization clipped to `crop`. Throws "sub-pixel fragment"
/// when no pixel centre falls inside.
RasterMask rasterize_polygon(const geometry::Polygon& p, const geometry::Rect& crop);

/// Keeps the pixels whose whole disc {dx^2 + dy^2 <= r^2} lies in the support
/// (outside the box counts as background). Retained pixels keep their alpha.
/// Throws "mask vanished" when nothing survives.
RasterMask erode_mask(const RasterMask& m, int radius_px);

/// Binary dilation by the same disc; the box grows by radius_px on each side.
RasterMask dilate_mask(const RasterMask& m, int radius_px);

RasterMask open_mask(const RasterMask& m, int radius_px);
RasterMask close_mask(const RasterMask& m, int radius_px);

inline constexpr int kSmoothingRadius = 5;

/// Opening then closing with a 5-px disc. Throws "mask vanished".
RasterMask smooth_mask(const RasterMask& m);

/// Rotates about the fragment centre onto an enlarged canvas. Colours are
/// resampled bilinearly (weighted by source alpha), the mask is resampled and
/// re-binarised at 0.5. Multiples of 90 degrees are remapped exactly.
FragmentImage rotate_fragment(const FragmentImage& f, double degrees);

/// Crops the support box of `region` out of `source`: in-mask pixels copy the source colour with
/// the mask alpha, the rest get `fill` with alpha 0. Rotation is applied last.
/// Throws "empty fragment" / "region outside source".
FragmentImage extract_fragment(const Image& source, const Region& region, Rgba fill = kDefaultFill,
                               double rotation_deg = 0.0, std::string fragment_id = {});

}  // namespace fresco::raster
