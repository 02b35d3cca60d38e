#pragma once

#include <array>

#include "skyblur/raster.hpp"

namespace skyblur {

/// Row-major 3x3 correlation kernel.
using Kernel3x3 = std::array<double, 9>;

/// ITU-R BT.601 luma: 0.299 r + 0.587 g + 0.114 b. Equal channels map to
/// that channel value exactly.
GrayRaster to_grayscale(const RgbRaster& img);

/// Copy the ROI; value at (i, j) equals img at (roi.x + i, roi.y + j).
GrayRaster crop(const GrayRaster& img, const RoiRect& roi);

/// Valid-mode 3x3 correlation: output shrinks by one pixel per side and is
/// not clamped, so values may be negative.
GrayRaster convolve3x3(const GrayRaster& img, const Kernel3x3& kernel);

}  // namespace skyblur
