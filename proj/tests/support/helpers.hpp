#pragma once

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "fresco/geometry.hpp"
#include "fresco/raster.hpp"
#include "fresco/rng.hpp"
#include "oracles.hpp"

namespace testing {

namespace fs = std::filesystem;

// Removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("fresco_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline std::vector<oracle::P> to_oracle(const fresco::geometry::Polygon& p) {
  std::vector<oracle::P> out;
  for (const auto& v : p.vertices()) out.push_back({v.x, v.y});
  return out;
}

// Places a mask on a w x h grid in source coordinates.
inline oracle::Grid to_grid(const fresco::raster::RasterMask& m, int w, int h) {
  oracle::Grid g(w, h);
  for (int r = 0; r < m.height(); ++r) {
    for (int c = 0; c < m.width(); ++c) {
      const int x = m.x() + c, y = m.y() + r;
      if (m.at(c, r) > 0.0f && x >= 0 && y >= 0 && x < w && y < h) g.set(x, y, true);
    }
  }
  return g;
}

inline fresco::raster::RasterMask from_grid(const oracle::Grid& g) {
  fresco::raster::RasterMask m({0, 0, g.w, g.h});
  for (int y = 0; y < g.h; ++y) {
    for (int x = 0; x < g.w; ++x) m.set(x, y, g.at(x, y) ? 1.0f : 0.0f);
  }
  return m;
}

// Deterministic textured test image.
inline fresco::raster::Image synthetic_image(int w, int h, std::uint64_t seed) {
  fresco::raster::Image img(w, h);
  fresco::Rng rng(seed);
  const int a = static_cast<int>(rng.below(7)) + 1, b = static_cast<int>(rng.below(5)) + 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto* p = img.px(x, y);
      p[0] = static_cast<std::uint8_t>((x * a + y) & 0xff);
      p[1] = static_cast<std::uint8_t>((y * b + x / 3) & 0xff);
      p[2] = static_cast<std::uint8_t>(((x ^ y) * 5) & 0xff);
      p[3] = 255;
    }
  }
  return img;
}

}  // namespace testing
