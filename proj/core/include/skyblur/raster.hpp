#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace skyblur {

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major luminance raster. Decoded images carry values in [0, 255];
/// filter outputs (convolve3x3) may carry arbitrary signed reals.
class GrayRaster {
public:
    GrayRaster() = default;
    GrayRaster(int width, int height, double fill = 0.0);
    GrayRaster(int width, int height, std::vector<double> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return values_.size(); }

    double at(int x, int y) const noexcept { return values_[index(x, y)]; }
    double& at(int x, int y) noexcept { return values_[index(x, y)]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    friend bool operator==(const GrayRaster&, const GrayRaster&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Row-major RGB raster, one real per channel in [0, 255].
class RgbRaster {
public:
    RgbRaster() = default;
    RgbRaster(int width, int height, Rgb fill = {});
    RgbRaster(int width, int height, std::vector<Rgb> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return pixels_.size(); }

    const Rgb& at(int x, int y) const noexcept { return pixels_[index(x, y)]; }
    Rgb& at(int x, int y) noexcept { return pixels_[index(x, y)]; }

    std::span<const Rgb> pixels() const noexcept { return pixels_; }
    std::span<Rgb> pixels() noexcept { return pixels_; }

    friend bool operator==(const RgbRaster&, const RgbRaster&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Rgb> pixels_;
};

/// Axis-aligned pixel rectangle. Classification configs additionally require
/// width/height >= 3 so the Laplacian has a valid interior; plain crops only
/// need the rectangle to sit inside the source raster.
struct RoiRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const RoiRect&, const RoiRect&) = default;
};

}  // namespace skyblur
