#include "skyblur/imaging.hpp"

#include <string>
#include <vector>

#include "skyblur/errors.hpp"

namespace skyblur {

GrayRaster to_grayscale(const RgbRaster& img) {
    std::vector<double> values;
    values.reserve(img.pixel_count());
    for (const Rgb& p : img.pixels()) {
        // Algebraically 0.299 r + 0.587 g + 0.114 b, arranged so that
        // r == g == b returns the channel value with no rounding at all.
        values.push_back(p.b + 0.299 * (p.r - p.b) + 0.587 * (p.g - p.b));
    }
    return GrayRaster(img.width(), img.height(), std::move(values));
}

GrayRaster crop(const GrayRaster& img, const RoiRect& roi) {
    if (roi.x < 0 || roi.y < 0 || roi.width < 1 || roi.height < 1 ||
        roi.x + roi.width > img.width() || roi.y + roi.height > img.height()) {
        throw RoiOutOfBounds("roi " + std::to_string(roi.x) + "," + std::to_string(roi.y) +
                             "," + std::to_string(roi.width) + "," + std::to_string(roi.height) +
                             " does not fit a " + std::to_string(img.width()) + "x" +
                             std::to_string(img.height()) + " raster");
    }
    GrayRaster out(roi.width, roi.height);
    for (int j = 0; j < roi.height; ++j) {
        for (int i = 0; i < roi.width; ++i) {
            out.at(i, j) = img.at(roi.x + i, roi.y + j);
        }
    }
    return out;
}

GrayRaster convolve3x3(const GrayRaster& img, const Kernel3x3& kernel) {
    if (img.width() < 3 || img.height() < 3) {
        throw ImageTooSmall("convolve3x3 needs at least a 3x3 raster, got " +
                            std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
    GrayRaster out(img.width() - 2, img.height() - 2);
    for (int j = 0; j < out.height(); ++j) {
        for (int i = 0; i < out.width(); ++i) {
            double sum = 0.0;
            for (int ky = 0; ky < 3; ++ky) {
                for (int kx = 0; kx < 3; ++kx) {
                    sum += kernel[static_cast<std::size_t>(ky) * 3 + kx] *
                           img.at(i + kx, j + ky);
                }
            }
            out.at(i, j) = sum;
        }
    }
    return out;
}

}  // namespace skyblur
