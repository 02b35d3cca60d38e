#include "skyblur/dft.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skyblur {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform for power-of-two lengths.
class Pow2Fft {
public:
    explicit Pow2Fft(std::size_t n) : n_(n), twiddles_(n / 2), rev_(n) {
        const double step = -kTwoPi / static_cast<double>(n);
        for (std::size_t k = 0; k < n / 2; ++k) {
            twiddles_[k] = std::polar(1.0, step * static_cast<double>(k));
        }
        unsigned bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (unsigned b = 0; b < bits; ++b) {
                r |= ((i >> b) & 1u) << (bits - 1 - b);
            }
            rev_[i] = r;
        }
    }

    void forward(Complex* a) const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n_ / len;
            for (std::size_t start = 0; start < n_; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    const Complex t = twiddles_[k * stride] * a[start + half + k];
                    a[start + half + k] = a[start + k] - t;
                    a[start + k] += t;
                }
            }
        }
    }

    void inverse(Complex* a) const {
        for (std::size_t i = 0; i < n_; ++i) a[i] = std::conj(a[i]);
        forward(a);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) a[i] = std::conj(a[i]) * scale;
    }

private:
    std::size_t n_;
    std::vector<Complex> twiddles_;
    std::vector<std::size_t> rev_;
};

/// One-dimensional plan for arbitrary lengths: radix-2 when the length is a
/// power of two, Bluestein's chirp-z reduction onto a power-of-two
/// convolution otherwise.
class Dft1d {
public:
    explicit Dft1d(std::size_t n) : n_(n) {
        if (n_ <= 1) return;
        if (is_pow2(n_)) {
            direct_ = std::make_unique<Pow2Fft>(n_);
            return;
        }
        std::size_t m = 1;
        while (m < 2 * n_ - 1) m <<= 1;
        conv_ = std::make_unique<Pow2Fft>(m);
        m_ = m;

        // chirp[k] = exp(-i*pi*k^2/n); k^2 reduced mod 2n keeps the angle
        // argument small so polar() stays accurate for large k.
        chirp_.resize(n_);
        const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
            const double angle = -std::numbers::pi * static_cast<double>(k2) /
                                 static_cast<double>(n_);
            chirp_[k] = std::polar(1.0, angle);
        }

        std::vector<Complex> b(m, Complex{});
        b[0] = std::conj(chirp_[0]);
        for (std::size_t k = 1; k < n_; ++k) {
            b[k] = std::conj(chirp_[k]);
            b[m - k] = std::conj(chirp_[k]);
        }
        conv_->forward(b.data());
        chirp_spectrum_ = std::move(b);
    }

    std::size_t length() const noexcept { return n_; }

    void forward(Complex* a) const {
        if (n_ <= 1) return;
        if (direct_) {
            direct_->forward(a);
            return;
        }
        std::vector<Complex> buf(m_, Complex{});
        for (std::size_t k = 0; k < n_; ++k) buf[k] = a[k] * chirp_[k];
        conv_->forward(buf.data());
        for (std::size_t i = 0; i < m_; ++i) buf[i] *= chirp_spectrum_[i];
        conv_->inverse(buf.data());
        for (std::size_t k = 0; k < n_; ++k) a[k] = buf[k] * chirp_[k];
    }

    void inverse(Complex* a) const {
        if (n_ <= 1) return;
        for (std::size_t i = 0; i < n_; ++i) a[i] = std::conj(a[i]);
        forward(a);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) a[i] = std::conj(a[i]) * scale;
    }

private:
    std::size_t n_;
    std::unique_ptr<Pow2Fft> direct_;
    std::unique_ptr<Pow2Fft> conv_;
    std::size_t m_ = 0;
    std::vector<Complex> chirp_;
    std::vector<Complex> chirp_spectrum_;
};

enum class Direction { forward, inverse };

void transform2d(Spectrum& s, Direction dir) {
    const int w = s.width();
    const int h = s.height();
    Complex* data = s.values().data();

    const Dft1d row_plan(static_cast<std::size_t>(w));
    for (int y = 0; y < h; ++y) {
        Complex* row = data + static_cast<std::size_t>(y) * w;
        dir == Direction::forward ? row_plan.forward(row) : row_plan.inverse(row);
    }

    const Dft1d col_plan(static_cast<std::size_t>(h));
    std::vector<Complex> col(static_cast<std::size_t>(h));
    for (int u = 0; u < w; ++u) {
        for (int v = 0; v < h; ++v) col[static_cast<std::size_t>(v)] = s.at(u, v);
        dir == Direction::forward ? col_plan.forward(col.data()) : col_plan.inverse(col.data());
        for (int v = 0; v < h; ++v) s.at(u, v) = col[static_cast<std::size_t>(v)];
    }
}

void require_nonempty(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("transform requires at least a 1x1 raster, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Spectrum::Spectrum(int width, int height) : width_(width), height_(height) {
    require_nonempty(width, height);
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                   Complex{});
}

Spectrum::Spectrum(int width, int height, std::vector<Complex> values)
    : width_(width), height_(height), values_(std::move(values)) {
    require_nonempty(width, height);
    if (values_.size() !=
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::invalid_argument("spectrum value count does not match dimensions");
    }
}

Spectrum fft2d(const GrayRaster& img) {
    require_nonempty(img.width(), img.height());
    Spectrum spec(img.width(), img.height());
    auto src = img.values();
    auto dst = spec.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = Complex(src[i], 0.0);
    transform2d(spec, Direction::forward);
    return spec;
}

Spectrum ifft2d(const Spectrum& spec) {
    Spectrum out(spec.width(), spec.height(),
                 std::vector<Complex>(spec.values().begin(), spec.values().end()));
    transform2d(out, Direction::inverse);
    return out;
}

Spectrum naive_dft2d(const GrayRaster& img) {
    require_nonempty(img.width(), img.height());
    const int w = img.width();
    const int h = img.height();
    Spectrum spec(w, h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            Complex sum{};
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double angle =
                        -kTwoPi * (static_cast<double>(u) * x / w +
                                   static_cast<double>(v) * y / h);
                    sum += img.at(x, y) * std::polar(1.0, angle);
                }
            }
            spec.at(u, v) = sum;
        }
    }
    return spec;
}

Spectrum fftshift2d(const Spectrum& spec) {
    const int w = spec.width();
    const int h = spec.height();
    Spectrum out(w, h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            out.at((u + w / 2) % w, (v + h / 2) % h) = spec.at(u, v);
        }
    }
    return out;
}

Spectrum ifftshift2d(const Spectrum& spec) {
    const int w = spec.width();
    const int h = spec.height();
    Spectrum out(w, h);
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            out.at(u, v) = spec.at((u + w / 2) % w, (v + h / 2) % h);
        }
    }
    return out;
}

}  // namespace skyblur
