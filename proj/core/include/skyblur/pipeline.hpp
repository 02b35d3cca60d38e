#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skyblur/classify.hpp"

namespace skyblur {

/// One classified (or failed) input file. Exactly one of {verdict fields,
/// error} is populated.
struct RunRecord {
    std::string path;  // relative to the scanned directory
    MetricKind metric = MetricKind::laplacian;
    std::optional<double> score;
    std::optional<bool> blurred;
    std::string error;  // empty on success

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunReport {
    ClassifierConfig config;
    std::string started;   // ISO-8601 UTC
    std::string finished;  // ISO-8601 UTC
    std::vector<RunRecord> records;  // ordered lexicographically by path
};

/// Decode, grayscale and classify every *.png / *.jpg / *.jpeg (any case)
/// directly under dir. Per-file failures become error records instead of
/// aborting the batch; record order is deterministic for any parallelism.
RunReport run_batch(const std::filesystem::path& dir,
                    const ClassifierConfig& config,
                    int parallelism);

// Config files are strict JSON: fields `metric` ("laplacian"|"fft"),
// `threshold` (number), optional `roi` {x, y, width, height}, optional
// `fft_low_freq_fraction` (default 0.125). Unknown fields are rejected.
ClassifierConfig parse_config_json(std::string_view text);
std::string config_to_json(const ClassifierConfig& config);
ClassifierConfig load_config(const std::filesystem::path& path);
void save_config(const ClassifierConfig& config, const std::filesystem::path& path);

// Manifests are headerless CSV rows `path,label` with label true|false.
LabeledManifest parse_manifest_csv(std::string_view text);
std::string manifest_to_csv(const LabeledManifest& manifest);
LabeledManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const LabeledManifest& manifest, const std::filesystem::path& path);

std::string report_to_json(const RunReport& report);
std::string report_to_csv(const RunReport& report);
RunReport report_from_json(std::string_view text);

}  // namespace skyblur
