#include "skyblur/raster.hpp"

#include <stdexcept>
#include <string>

namespace skyblur {

namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("raster dimensions must be at least 1x1, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

void check_count(int width, int height, std::size_t count) {
    const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (count != expected) {
        throw std::invalid_argument("raster value count " + std::to_string(count) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
}

}  // namespace

GrayRaster::GrayRaster(int width, int height, double fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayRaster::GrayRaster(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height);
    check_count(width, height, values_.size());
}

RgbRaster::RgbRaster(int width, int height, Rgb fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

RgbRaster::RgbRaster(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    check_count(width, height, pixels_.size());
}

}  // namespace skyblur
