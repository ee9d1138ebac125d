#pragma once

#include <filesystem>

#include "fresco/raster.hpp"

namespace fresco::raster {

/// Decodes any PNG into 8-bit RGBA. Throws InputError on unreadable files.
Image read_png(const std::filesystem::path& path);

/// Writes 8-bit RGBA. Output bytes depend only on the image contents.
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace fresco::raster
