#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skyblur/raster.hpp"

namespace skyblur {

/// Sniff the magic bytes and decode a PNG or JPEG stream.
/// 16-bit PNG channels are scaled by 255/65535 into the canonical [0, 255] range.
RgbRaster decode_image(std::span<const std::uint8_t> bytes);

/// 8-bit grayscale PNG; values are rounded and clamped to [0, 255].
std::vector<std::uint8_t> encode_png(const GrayRaster& img);

/// 8-bit RGB PNG.
std::vector<std::uint8_t> encode_png(const RgbRaster& img);

/// Baseline RGB JPEG.
std::vector<std::uint8_t> encode_jpeg(const RgbRaster& img, int quality = 90);

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_binary_file(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes);

/// read_binary_file + decode_image.
RgbRaster load_image(const std::filesystem::path& path);

}  // namespace skyblur
