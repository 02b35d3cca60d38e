#include "skyblur/classify.hpp"

#include <algorithm>
#include <vector>

#include "skyblur/errors.hpp"
#include "skyblur/imaging.hpp"

namespace skyblur {

ClassifierConfig default_config(MetricKind kind) {
    ClassifierConfig cfg;
    cfg.metric = kind;
    cfg.threshold = kind == MetricKind::laplacian ? 12.0 : -4.0;
    return cfg;
}

Verdict classify(const GrayRaster& img, const ClassifierConfig& config) {
    const GrayRaster* target = &img;
    GrayRaster cropped;
    if (config.roi) {
        cropped = crop(img, *config.roi);
        target = &cropped;
    }
    const BlurScore score = config.metric == MetricKind::laplacian
                                ? laplacian_score(*target)
                                : fft_score(*target, config.fft_params);
    return {score.value < config.threshold, score};
}

CalibrationResult calibrate(std::span<const ScoreSample> samples) {
    if (samples.empty()) {
        throw EmptyCalibrationSet("calibration requires at least one scored sample");
    }

    std::vector<double> distinct;
    distinct.reserve(samples.size());
    for (const ScoreSample& s : samples) distinct.push_back(s.value);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> candidates;
    candidates.reserve(distinct.size() + 1);
    candidates.push_back(distinct.front() - 1.0);
    for (std::size_t i = 1; i < distinct.size(); ++i) {
        candidates.push_back((distinct[i - 1] + distinct[i]) / 2.0);
    }
    candidates.push_back(distinct.back() + 1.0);

    const double n = static_cast<double>(samples.size());
    double best_threshold = candidates.front();
    double best_accuracy = -1.0;
    // Candidates ascend, so keeping only strict improvements breaks ties
    // toward the smallest threshold.
    for (double t : candidates) {
        long correct = 0;
        for (const ScoreSample& s : samples) {
            const bool predicted_blurred = s.value < t;
            if (predicted_blurred == s.blurred) ++correct;
        }
        const double accuracy = static_cast<double>(correct) / n;
        if (accuracy > best_accuracy) {
            best_accuracy = accuracy;
            best_threshold = t;
        }
    }
    return {best_threshold, best_accuracy};
}

EvalReport evaluate(std::span<const PredictionPair> pairs) {
    if (pairs.empty()) {
        throw EmptyEvaluationSet("evaluation requires at least one prediction");
    }
    EvalReport report;
    for (const PredictionPair& p : pairs) {
        if (p.predicted && p.actual) ++report.true_positives;
        else if (!p.predicted && !p.actual) ++report.true_negatives;
        else if (p.predicted && !p.actual) ++report.false_positives;
        else ++report.false_negatives;
    }
    report.n = static_cast<long>(pairs.size());
    report.accuracy = static_cast<double>(report.true_positives + report.true_negatives) /
                      static_cast<double>(report.n);
    return report;
}

}  // namespace skyblur
