#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "skyblur/dft.hpp"
#include "test_util.hpp"

using namespace skyblur;
using testutil::Rand;
using testutil::approx_abs;
using testutil::approx_rel;

namespace {

double max_element_error(const Spectrum& a, const Spectrum& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
    }
    return worst;
}

}  // namespace

TEST_CASE("single-point DFT is the identity") {
    const GrayRaster img(1, 1, std::vector<double>{5.0});
    const Spectrum fast = fft2d(img);
    const Spectrum naive = naive_dft2d(img);
    CHECK(fast.at(0, 0) == Complex{5.0, 0.0});
    CHECK(naive.at(0, 0) == Complex{5.0, 0.0});
}

TEST_CASE("constant 2x1 signal concentrates at DC") {
    const GrayRaster img(2, 1, std::vector<double>{1.0, 1.0});
    for (const Spectrum& spec : {fft2d(img), naive_dft2d(img)}) {
        CHECK(approx_abs(spec.at(0, 0).real(), 2.0, 1e-12));
        CHECK(approx_abs(spec.at(0, 0).imag(), 0.0, 1e-12));
        CHECK(std::abs(spec.at(1, 0)) <= 1e-12);
    }
}

TEST_CASE("fft2d matches the naive double sum on awkward sizes") {
    Rand rng(101);
    // Odd, prime, mixed and power-of-two dimensions; Bluestein and radix-2 paths.
    const int sizes[][2] = {{5, 7}, {7, 5},  {13, 11}, {1, 16}, {16, 1},
                            {8, 8}, {12, 9}, {15, 15}, {16, 16}, {3, 14}};
    for (const auto& wh : sizes) {
        const GrayRaster img = testutil::random_raster(rng, wh[0], wh[1]);
        CHECK(max_element_error(fft2d(img), naive_dft2d(img)) < 1e-6);
    }
}

TEST_CASE("Parseval holds with the unnormalized forward convention") {
    Rand rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = rng.next_int(1, 16);
        const int h = rng.next_int(1, 16);
        const GrayRaster img = testutil::random_raster(rng, w, h);
        const Spectrum spec = fft2d(img);
        double spectral = 0.0;
        for (const Complex& z : spec.values()) spectral += std::norm(z);
        double spatial = 0.0;
        for (double v : img.values()) spatial += v * v;
        CHECK(approx_rel(spectral, static_cast<double>(w) * h * spatial, 1e-9));
    }
}

TEST_CASE("inverse undoes forward within 1e-9 per element") {
    Rand rng(303);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = rng.next_int(1, 16);
        const int h = rng.next_int(1, 16);
        const GrayRaster img = testutil::random_raster(rng, w, h);
        const Spectrum round = ifft2d(fft2d(img));
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                CHECK(approx_abs(round.at(x, y).real(), img.at(x, y), 1e-9));
                CHECK(approx_abs(round.at(x, y).imag(), 0.0, 1e-9));
            }
        }
    }
}

TEST_CASE("fftshift centers DC and ifftshift undoes it") {
    Rand rng(404);
    for (const int w : {4, 5}) {
        for (const int h : {6, 7}) {
            const GrayRaster img = testutil::random_raster(rng, w, h);
            const Spectrum spec = fft2d(img);
            const Spectrum shifted = fftshift2d(spec);
            CHECK(shifted.at(w / 2, h / 2) == spec.at(0, 0));

            const Spectrum back = ifftshift2d(shifted);
            CHECK(max_element_error(back, spec) == 0.0);
        }
    }
}

TEST_CASE("constant raster has all energy in the DC bin") {
    const GrayRaster img(6, 5, 42.0);
    const Spectrum spec = fft2d(img);
    CHECK(approx_abs(spec.at(0, 0).real(), 42.0 * 6 * 5, 1e-9));
    for (int v = 0; v < 5; ++v) {
        for (int u = 0; u < 6; ++u) {
            if (u == 0 && v == 0) continue;
            CHECK(std::abs(spec.at(u, v)) < 1e-9);
        }
    }
}
