#pragma once

#include <string_view>

#include "skyblur/imaging.hpp"
#include "skyblur/raster.hpp"

namespace skyblur {

enum class MetricKind { laplacian, fft };

std::string_view to_string(MetricKind kind) noexcept;

/// Parses "laplacian" or "fft"; throws std::invalid_argument otherwise.
MetricKind metric_from_string(std::string_view name);

/// A metric value together with the metric that produced it.
/// Both metrics score sharper images higher.
struct BlurScore {
    MetricKind metric;
    double value;
};

/// Half-width of the removed central low-frequency block, as a fraction of
/// min(width, height). Must lie in (0, 0.5).
struct FftParams {
    double low_freq_fraction = 0.125;

    friend bool operator==(const FftParams&, const FftParams&) = default;
};

/// 4-neighbor positive Laplacian.
inline constexpr Kernel3x3 kLaplacianKernel = {0, 1, 0, 1, -4, 1, 0, 1, 0};

/// Population variance of the 3x3 Laplacian response.
BlurScore laplacian_score(const GrayRaster& img);

/// Mean of 20*log10(|pixel|) over the image reconstructed after zeroing the
/// centered low-frequency block; magnitudes are floored at 1e-12 so constant
/// inputs give a finite -240 dB.
BlurScore fft_score(const GrayRaster& img, const FftParams& params = {});

}  // namespace skyblur
