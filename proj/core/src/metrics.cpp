#include "skyblur/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "skyblur/dft.hpp"
#include "skyblur/errors.hpp"

namespace skyblur {

namespace {

// Floor for log arguments; keeps constant images at a finite -240 dB.
constexpr double kLogFloor = 1e-12;

}  // namespace

std::string_view to_string(MetricKind kind) noexcept {
    return kind == MetricKind::laplacian ? "laplacian" : "fft";
}

MetricKind metric_from_string(std::string_view name) {
    if (name == "laplacian") return MetricKind::laplacian;
    if (name == "fft") return MetricKind::fft;
    throw std::invalid_argument("unknown metric `" + std::string(name) +
                                "`, expected \"laplacian\" or \"fft\"");
}

BlurScore laplacian_score(const GrayRaster& img) {
    const GrayRaster response = convolve3x3(img, kLaplacianKernel);
    const auto values = response.values();
    const double n = static_cast<double>(values.size());

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;

    double sum_sq = 0.0;
    for (double v : values) {
        const double d = v - mean;
        sum_sq += d * d;
    }
    return {MetricKind::laplacian, sum_sq / n};
}

BlurScore fft_score(const GrayRaster& img, const FftParams& params) {
    if (!(params.low_freq_fraction > 0.0 && params.low_freq_fraction < 0.5)) {
        throw std::invalid_argument("low_freq_fraction must lie in (0, 0.5)");
    }
    const int w = img.width();
    const int h = img.height();
    if (std::min(w, h) < 4) {
        throw ImageTooSmall("fft_score needs min(width, height) >= 4, got " +
                            std::to_string(w) + "x" + std::to_string(h));
    }

    Spectrum spec = fftshift2d(fft2d(img));

    // Zero the centered low-frequency block; half-width 0 still removes the
    // DC bin, which makes the score brightness-invariant.
    const int half = static_cast<int>(params.low_freq_fraction * std::min(w, h));
    const int cx = w / 2;
    const int cy = h / 2;
    const int u0 = std::max(0, cx - half);
    const int u1 = std::min(w - 1, cx + half);
    const int v0 = std::max(0, cy - half);
    const int v1 = std::min(h - 1, cy + half);
    for (int v = v0; v <= v1; ++v) {
        for (int u = u0; u <= u1; ++u) {
            spec.at(u, v) = Complex{};
        }
    }

    const Spectrum recon = ifft2d(ifftshift2d(spec));
    double sum = 0.0;
    for (const Complex& z : recon.values()) {
        sum += 20.0 * std::log10(std::max(std::abs(z), kLogFloor));
    }
    return {MetricKind::fft, sum / static_cast<double>(recon.size())};
}

}  // namespace skyblur
