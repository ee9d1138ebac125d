#pragma once

#include <string>

#include "fresco/fragmenters.hpp"

namespace fresco::fragmenters::detail {

/// Zero-padded local fragment id ("0007"); width grows past 9999 pieces.
std::string local_id(std::size_t index, std::size_t total);

void require_method(const FragmentationConfig& config, Method expected);

void require_dimensions(int width, int height);

}  // namespace fresco::fragmenters::detail
