#include "skyblur/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "skyblur/codec.hpp"
#include "skyblur/errors.hpp"
#include "skyblur/rng.hpp"

namespace skyblur {

namespace {

double lerp(double a, double b, double t) { return a + t * (b - a); }

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

double lattice_value(std::uint64_t seed, int octave, std::int64_t ix, std::int64_t iy) {
    std::uint64_t h = hash_combine(seed, static_cast<std::uint64_t>(octave));
    h = hash_combine(h, static_cast<std::uint64_t>(ix));
    h = hash_combine(h, static_cast<std::uint64_t>(iy));
    return to_unit_interval(h);
}

/// Bilinearly interpolated seeded lattice noise in [0, 1).
double value_noise(std::uint64_t seed, int octave, double x, double y, double spacing) {
    const double gx = x / spacing;
    const double gy = y / spacing;
    const auto ix = static_cast<std::int64_t>(std::floor(gx));
    const auto iy = static_cast<std::int64_t>(std::floor(gy));
    const double fx = smoothstep(gx - static_cast<double>(ix));
    const double fy = smoothstep(gy - static_cast<double>(iy));
    const double n00 = lattice_value(seed, octave, ix, iy);
    const double n10 = lattice_value(seed, octave, ix + 1, iy);
    const double n01 = lattice_value(seed, octave, ix, iy + 1);
    const double n11 = lattice_value(seed, octave, ix + 1, iy + 1);
    return lerp(lerp(n00, n10, fx), lerp(n01, n11, fx), fy);
}

void validate_scene(const SceneParams& p) {
    if (p.width < 1 || p.height < 1) {
        throw std::invalid_argument("scene dimensions must be at least 1x1");
    }
    if (p.cloud_octaves < 1) {
        throw std::invalid_argument("cloud_octaves must be at least 1");
    }
    if (!(p.cloud_opacity >= 0.0 && p.cloud_opacity <= 1.0)) {
        throw std::invalid_argument("cloud_opacity must lie in [0, 1]");
    }
    const auto luma_ok = [](double v) { return v >= 0.0 && v <= 255.0; };
    if (!luma_ok(p.sky_top_luma) || !luma_ok(p.sky_bottom_luma) || !luma_ok(p.marker_luma)) {
        throw std::invalid_argument("luma values must lie in [0, 255]");
    }
    if (p.marker.x < 0 || p.marker.y < 0 || p.marker.width < 1 || p.marker.height < 1 ||
        p.marker.x + p.marker.width > p.width || p.marker.y + p.marker.height > p.height) {
        throw std::invalid_argument("marker rectangle must lie inside the scene");
    }
}

}  // namespace

GrayRaster generate_scene(const SceneParams& params) {
    validate_scene(params);
    const int w = params.width;
    const int h = params.height;
    GrayRaster img(w, h);

    const double base_spacing =
        std::max(4.0, static_cast<double>(std::min(w, h)) / 6.0);

    for (int y = 0; y < h; ++y) {
        const double t = h > 1 ? static_cast<double>(y) / (h - 1) : 0.0;
        const double sky = lerp(params.sky_top_luma, params.sky_bottom_luma, t);
        for (int x = 0; x < w; ++x) {
            double noise = 0.0;
            double amplitude = 1.0;
            double amplitude_sum = 0.0;
            double spacing = base_spacing;
            for (int o = 0; o < params.cloud_octaves; ++o) {
                noise += amplitude * value_noise(params.rng_seed, o, x, y, spacing);
                amplitude_sum += amplitude;
                amplitude *= 0.5;
                spacing = std::max(spacing * 0.5, 1.5);
            }
            const double cloud = noise / amplitude_sum;
            const double value = lerp(sky, 255.0, params.cloud_opacity * cloud);
            img.at(x, y) = std::clamp(value, 0.0, 255.0);
        }
    }

    for (int j = 0; j < params.marker.height; ++j) {
        for (int i = 0; i < params.marker.width; ++i) {
            img.at(params.marker.x + i, params.marker.y + j) = params.marker_luma;
        }
    }
    return img;
}

GrayRaster gaussian_blur(const GrayRaster& img, const BlurSpec& spec) {
    if (spec.sigma < 0.0 || !std::isfinite(spec.sigma)) {
        throw std::invalid_argument("sigma must be finite and non-negative");
    }
    if (spec.sigma == 0.0) return img;

    const int radius = static_cast<int>(std::ceil(3.0 * spec.sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double v = std::exp(-(static_cast<double>(k) * k) /
                                  (2.0 * spec.sigma * spec.sigma));
        kernel[static_cast<std::size_t>(k + radius)] = v;
        sum += v;
    }
    for (double& v : kernel) v /= sum;

    // Mirror with the edge sample repeated; works for taps arbitrarily far
    // outside the image.
    const auto mirror = [](int i, int n) {
        const int period = 2 * n;
        int m = i % period;
        if (m < 0) m += period;
        return m < n ? m : period - 1 - m;
    };

    const int w = img.width();
    const int h = img.height();
    GrayRaster tmp(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       img.at(mirror(x + k, w), y);
            }
            tmp.at(x, y) = acc;
        }
    }
    GrayRaster out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       tmp.at(x, mirror(y + k, h));
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

LabeledManifest generate_corpus(const std::filesystem::path& out_dir,
                                int n_sharp, int n_blurred,
                                const SceneParams& params,
                                double sigma_lo, double sigma_hi,
                                std::uint64_t seed) {
    if (n_sharp < 0 || n_blurred < 0) {
        throw std::invalid_argument("image counts must be non-negative");
    }
    if (!(sigma_lo >= 0.0) || !(sigma_lo <= sigma_hi)) {
        throw std::invalid_argument("sigma range must satisfy 0 <= lo <= hi");
    }

    const int total = n_sharp + n_blurred;
    LabeledManifest manifest;
    if (total == 0) return manifest;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create corpus directory: " + out_dir.string());
    }

    for (int i = 0; i < total; ++i) {
        const bool blurred = i >= n_sharp;
        SceneParams scene_params = params;
        scene_params.rng_seed = derive_seed(seed, 0, static_cast<std::uint64_t>(i));
        GrayRaster img = generate_scene(scene_params);
        if (blurred) {
            const double u = to_unit_interval(derive_seed(seed, 1, static_cast<std::uint64_t>(i)));
            img = gaussian_blur(img, {sigma_lo + u * (sigma_hi - sigma_lo)});
        }
        char name[32];
        std::snprintf(name, sizeof name, "img_%04d.png", i);
        write_binary_file(out_dir / name, encode_png(img));
        manifest.entries.push_back({name, blurred});
    }

    std::sort(manifest.entries.begin(), manifest.entries.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
    return manifest;
}

}  // namespace skyblur
