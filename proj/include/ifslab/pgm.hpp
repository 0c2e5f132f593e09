#pragma once

#include <cstddef>
#include <string>

#include "ifslab/cloud.hpp"

namespace ifslab {

/// Rasterize a 2-D cloud into a binary P5 graymap: linear world-to-pixel
/// transform from the cloud's bounding box, hit counts scaled to 0..255.
void write_pgm(const std::string& path, const PointCloud& cloud,
               std::size_t width, std::size_t height);

}  // namespace ifslab
