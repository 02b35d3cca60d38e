#pragma once

#include <cstdint>
#include <filesystem>

#include "skyblur/classify.hpp"
#include "skyblur/raster.hpp"

namespace skyblur {

/// Synthetic sky scene: vertical luminance gradient, multi-octave value-noise
/// clouds (soft edges), and a solid marker rectangle (hard edges).
struct SceneParams {
    int width = 256;
    int height = 256;
    double sky_top_luma = 140.0;
    double sky_bottom_luma = 205.0;
    int cloud_octaves = 4;
    double cloud_opacity = 0.6;
    RoiRect marker{118, 148, 16, 76};
    double marker_luma = 25.0;
    std::uint64_t rng_seed = 0;

    friend bool operator==(const SceneParams&, const SceneParams&) = default;
};

/// Deterministic function of params; identical params give a bit-identical raster.
GrayRaster generate_scene(const SceneParams& params);

struct BlurSpec {
    double sigma = 0.0;  // 0 = identity; kernel truncated at radius ceil(3*sigma)
};

/// Separable Gaussian, kernel normalized to sum 1, mirrored (edge-repeating)
/// boundary extension.
GrayRaster gaussian_blur(const GrayRaster& img, const BlurSpec& spec);

/// Write n_sharp sharp scenes followed by n_blurred blurred ones (sigma drawn
/// uniformly from [sigma_lo, sigma_hi]) as img_NNNN.png under out_dir, scene
/// noise varied per image by seeds derived from `seed`. Returns the
/// ground-truth manifest ordered by filename. Fully deterministic given seed.
LabeledManifest generate_corpus(const std::filesystem::path& out_dir,
                                int n_sharp, int n_blurred,
                                const SceneParams& params,
                                double sigma_lo, double sigma_hi,
                                std::uint64_t seed);

}  // namespace skyblur
