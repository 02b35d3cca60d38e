#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "skyblur/raster.hpp"
#include "skyblur/rng.hpp"

namespace testutil {

/// Deterministic value stream for test data; independent of any library RNG use.
class Rand {
public:
    explicit Rand(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return skyblur::splitmix64(state_);
    }

    double next_unit() { return skyblur::to_unit_interval(next_u64()); }

    double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    int next_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() %
                                     static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

private:
    std::uint64_t state_;
};

inline skyblur::GrayRaster random_raster(Rand& rng, int w, int h,
                                         double lo = 0.0, double hi = 255.0) {
    skyblur::GrayRaster img(w, h);
    for (double& v : img.values()) v = rng.next_range(lo, hi);
    return img;
}

inline skyblur::GrayRaster random_integer_raster(Rand& rng, int w, int h,
                                                 int lo = 0, int hi = 255) {
    skyblur::GrayRaster img(w, h);
    for (double& v : img.values()) v = static_cast<double>(rng.next_int(lo, hi));
    return img;
}

inline bool approx_abs(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

inline bool approx_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

/// Unique scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("skyblur_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace testutil
