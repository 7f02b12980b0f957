#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sifs/compact_set.hpp"

namespace sifs {

/// Binary PGM (P5, maxval 255, one byte per pixel).
std::string encode_pgm(int width, int height, const std::vector<std::uint8_t>& pixels);

/// Rasterizes a 1- or 2-dimensional coordinate set: points splatted as 255
/// on a 0 background, bounding box mapped linearly onto the image (y up).
/// 1-D sets draw on the middle row.
std::vector<std::uint8_t> rasterize(const CompactSet& set, int width, int height);

std::string render_pgm(const CompactSet& set, int width, int height);

}  // namespace sifs
