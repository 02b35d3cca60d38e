#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skyblur/metrics.hpp"
#include "skyblur/raster.hpp"

namespace skyblur {

struct ClassifierConfig {
    MetricKind metric = MetricKind::laplacian;
    double threshold = 12.0;
    std::optional<RoiRect> roi;  // absent = score the whole image
    FftParams fft_params;

    friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

/// Stock thresholds (+12 laplacian, -4 fft). Tuned to one specific camera;
/// recalibrate for any new deployment.
ClassifierConfig default_config(MetricKind kind);

struct Verdict {
    bool blurred;
    BlurScore score;
};

/// Score the ROI crop (or the whole image when no ROI is set) and apply the
/// strict rule: blurred iff score < threshold. Equal score is non-blurred.
Verdict classify(const GrayRaster& img, const ClassifierConfig& config);

struct ScoreSample {
    double value;
    bool blurred;  // ground truth
};

struct CalibrationResult {
    double threshold;
    double train_accuracy;
};

/// Sweep candidate thresholds (midpoints between consecutive distinct scores
/// plus one below the minimum and one above the maximum) and return the
/// accuracy-maximizing one; ties break toward the smallest threshold.
CalibrationResult calibrate(std::span<const ScoreSample> samples);

struct PredictionPair {
    bool predicted;
    bool actual;
};

/// Blurred is the positive class.
struct EvalReport {
    double accuracy = 0.0;
    long true_positives = 0;
    long true_negatives = 0;
    long false_positives = 0;
    long false_negatives = 0;
    long n = 0;
};

EvalReport evaluate(std::span<const PredictionPair> pairs);

struct ManifestEntry {
    std::string path;
    bool blurred;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Ground-truth labels for a set of image files. Paths must be unique.
struct LabeledManifest {
    std::vector<ManifestEntry> entries;

    friend bool operator==(const LabeledManifest&, const LabeledManifest&) = default;
};

}  // namespace skyblur
