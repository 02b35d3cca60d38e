#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "skyblur/raster.hpp"

namespace skyblur {

using Complex = std::complex<double>;

/// Complex-valued raster holding spectra and inverse-transform outputs.
/// Element (u, v) lives at values[v * width + u].
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(int width, int height);
    Spectrum(int width, int height, std::vector<Complex> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return values_.size(); }

    Complex at(int u, int v) const noexcept { return values_[index(u, v)]; }
    Complex& at(int u, int v) noexcept { return values_[index(u, v)]; }

    std::span<const Complex> values() const noexcept { return values_; }
    std::span<Complex> values() noexcept { return values_; }

private:
    std::size_t index(int u, int v) const noexcept {
        return static_cast<std::size_t>(v) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(u);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<Complex> values_;
};

/// Forward 2D DFT, unnormalized:
///   F(u, v) = sum_{x,y} img(x, y) * exp(-2*pi*i*(u*x/W + v*y/H))
/// Arbitrary sizes; power-of-two lengths use radix-2, the rest Bluestein.
Spectrum fft2d(const GrayRaster& img);

/// The same transform evaluated as the literal double summation.
/// Deliberately slow; the correctness oracle for fft2d.
Spectrum naive_dft2d(const GrayRaster& img);

/// Inverse 2D DFT carrying the 1/(W*H) normalization.
Spectrum ifft2d(const Spectrum& spec);

/// Move the zero-frequency bin to (floor(W/2), floor(H/2)).
Spectrum fftshift2d(const Spectrum& spec);

/// Undo fftshift2d (identical for even dimensions).
Spectrum ifftshift2d(const Spectrum& spec);

}  // namespace skyblur
