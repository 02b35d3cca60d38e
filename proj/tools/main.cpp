// skyblur CLI: batch blur classification for sky camera archives, threshold
// calibration against labeled manifests, report scoring, and synthetic corpus
// generation. Machine output goes to files or stdout; diagnostics to stderr.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "skyblur/skyblur.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOperational = 1;
constexpr int kExitUsage = 2;

struct ClassifyOpts {
    std::string dir;
    std::string config;
    std::string out;
    std::string format = "json";
    int jobs = 0;
};

struct CalibrateOpts {
    std::string manifest;
    std::string image_root;
    std::string metric = "laplacian";
    std::string roi;
    double fft_low_freq = 0.125;
    std::string out_config;
};

struct EvaluateOpts {
    std::string manifest;
    std::string report;
};

struct SynthOpts {
    std::string out_dir;
    int n_sharp = 0;
    int n_blurred = 0;
    std::string sigma = "2,5";
    std::uint64_t seed = 42;
    int width = 256;
    int height = 256;
    double sky_top = 140.0;
    double sky_bottom = 205.0;
    int cloud_octaves = 4;
    double cloud_opacity = 0.6;
    std::string marker = "118,148,16,76";
    double marker_luma = 25.0;
};

int default_jobs() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

std::vector<double> parse_number_list(const std::string& text, std::size_t expected,
                                      const std::string& flag) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        double v = 0.0;
        const char* begin = item.data();
        const char* end = item.data() + item.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end || item.empty()) {
            throw CLI::ValidationError(flag, "expected " + std::to_string(expected) +
                                                 " comma-separated numbers, got `" + text + "`");
        }
        values.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (values.size() != expected) {
        throw CLI::ValidationError(flag, "expected " + std::to_string(expected) +
                                             " comma-separated numbers, got `" + text + "`");
    }
    return values;
}

skyblur::RoiRect parse_roi_flag(const std::string& text, const std::string& flag) {
    const auto v = parse_number_list(text, 4, flag);
    for (double x : v) {
        if (x != static_cast<double>(static_cast<int>(x))) {
            throw CLI::ValidationError(flag, "roi components must be integers");
        }
    }
    return {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
            static_cast<int>(v[3])};
}

void write_text_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    skyblur::write_binary_file(
        out_path, std::span<const std::uint8_t>(
                      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int run_classify(const ClassifyOpts& opts) {
    skyblur::ClassifierConfig config;
    try {
        config = skyblur::load_config(opts.config);
    } catch (const std::exception& e) {
        std::cerr << "skyblur classify: bad config: " << e.what() << "\n";
        return kExitUsage;
    }

    const int jobs = opts.jobs > 0 ? opts.jobs : default_jobs();
    const skyblur::RunReport report = skyblur::run_batch(opts.dir, config, jobs);

    write_text_output(opts.format == "csv" ? skyblur::report_to_csv(report)
                                           : skyblur::report_to_json(report),
                      opts.out);

    long classified = 0;
    long blurred = 0;
    long errors = 0;
    for (const skyblur::RunRecord& r : report.records) {
        if (r.error.empty()) {
            ++classified;
            if (r.blurred && *r.blurred) ++blurred;
        } else {
            ++errors;
        }
    }
    std::cerr << "classified: " << classified << ", blurred: " << blurred
              << ", errors: " << errors << "\n";
    return kExitOk;
}

int run_calibrate(const CalibrateOpts& opts) {
    const skyblur::LabeledManifest manifest = skyblur::load_manifest(opts.manifest);
    if (manifest.entries.empty()) {
        std::cerr << "skyblur calibrate: manifest is empty: " << opts.manifest << "\n";
        return kExitOperational;
    }

    skyblur::ClassifierConfig config;
    config.metric = skyblur::metric_from_string(opts.metric);
    config.fft_params.low_freq_fraction = opts.fft_low_freq;
    if (!opts.roi.empty()) config.roi = parse_roi_flag(opts.roi, "--roi");

    const fs::path root = opts.image_root.empty()
                              ? fs::path(opts.manifest).parent_path()
                              : fs::path(opts.image_root);

    std::vector<skyblur::ScoreSample> samples;
    samples.reserve(manifest.entries.size());
    for (const skyblur::ManifestEntry& entry : manifest.entries) {
        try {
            const skyblur::GrayRaster gray =
                skyblur::to_grayscale(skyblur::load_image(root / entry.path));
            const skyblur::Verdict v = skyblur::classify(gray, config);
            samples.push_back({v.score.value, entry.blurred});
        } catch (const std::exception& e) {
            std::cerr << "skyblur calibrate: cannot score `" << entry.path
                      << "`: " << e.what() << "\n";
            return kExitOperational;
        }
    }

    const skyblur::CalibrationResult result = skyblur::calibrate(samples);
    config.threshold = result.threshold;
    skyblur::save_config(config, opts.out_config);
    std::cerr << "threshold: " << result.threshold
              << ", train_accuracy: " << result.train_accuracy << "\n";
    return kExitOk;
}

int run_evaluate(const EvaluateOpts& opts) {
    const skyblur::LabeledManifest manifest = skyblur::load_manifest(opts.manifest);
    const auto report_bytes = skyblur::read_binary_file(opts.report);
    const skyblur::RunReport report = skyblur::report_from_json(
        std::string_view(reinterpret_cast<const char*>(report_bytes.data()),
                         report_bytes.size()));

    std::vector<skyblur::PredictionPair> pairs;
    pairs.reserve(manifest.entries.size());
    for (const skyblur::ManifestEntry& entry : manifest.entries) {
        const skyblur::RunRecord* found = nullptr;
        for (const skyblur::RunRecord& r : report.records) {
            if (r.path == entry.path) {
                found = &r;
                break;
            }
        }
        if (found == nullptr) {
            std::cerr << "skyblur evaluate: manifest path missing from report: "
                      << entry.path << "\n";
            return kExitOperational;
        }
        if (!found->error.empty() || !found->blurred.has_value()) {
            std::cerr << "skyblur evaluate: report has no verdict for: " << entry.path
                      << " (" << found->error << ")\n";
            return kExitOperational;
        }
        pairs.push_back({*found->blurred, entry.blurred});
    }

    const skyblur::EvalReport eval = skyblur::evaluate(pairs);
    std::printf(
        "{\n  \"accuracy\": %g,\n  \"true_positives\": %ld,\n  \"true_negatives\": %ld,\n"
        "  \"false_positives\": %ld,\n  \"false_negatives\": %ld,\n  \"n\": %ld\n}\n",
        eval.accuracy, eval.true_positives, eval.true_negatives, eval.false_positives,
        eval.false_negatives, eval.n);
    return kExitOk;
}

int run_synth(const SynthOpts& opts) {
    const auto sigma = parse_number_list(opts.sigma, 2, "--sigma");
    if (sigma[0] < 0.0 || sigma[0] > sigma[1]) {
        std::cerr << "skyblur synth: --sigma requires 0 <= lo <= hi, got " << opts.sigma
                  << "\n";
        return kExitUsage;
    }

    skyblur::SceneParams params;
    params.width = opts.width;
    params.height = opts.height;
    params.sky_top_luma = opts.sky_top;
    params.sky_bottom_luma = opts.sky_bottom;
    params.cloud_octaves = opts.cloud_octaves;
    params.cloud_opacity = opts.cloud_opacity;
    params.marker = parse_roi_flag(opts.marker, "--marker");
    params.marker_luma = opts.marker_luma;

    try {
        skyblur::generate_scene(params);  // validates scene/marker geometry up front
    } catch (const std::invalid_argument& e) {
        std::cerr << "skyblur synth: " << e.what() << "\n";
        return kExitUsage;
    }

    const skyblur::LabeledManifest manifest = skyblur::generate_corpus(
        opts.out_dir, opts.n_sharp, opts.n_blurred, params, sigma[0], sigma[1], opts.seed);
    fs::create_directories(opts.out_dir);
    skyblur::save_manifest(manifest, fs::path(opts.out_dir) / "manifest.csv");
    std::cerr << "wrote " << manifest.entries.size() << " images and manifest.csv to "
              << opts.out_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blur detection for ground-based sky camera images"};
    app.require_subcommand(1);

    ClassifyOpts classify_opts;
    CLI::App* classify = app.add_subcommand(
        "classify", "Classify every image in a directory and emit a report");
    classify->add_option("--dir", classify_opts.dir, "Directory of .png/.jpg/.jpeg images")
        ->required();
    classify->add_option("--config", classify_opts.config, "Classifier config JSON")
        ->required();
    classify->add_option("--out", classify_opts.out, "Report path (default: stdout)");
    classify->add_option("--format", classify_opts.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    classify->add_option("--jobs", classify_opts.jobs, "Worker count (default: CPU count)")
        ->check(CLI::PositiveNumber);

    CalibrateOpts calibrate_opts;
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "Learn the accuracy-maximizing threshold from a labeled manifest");
    calibrate->add_option("--manifest", calibrate_opts.manifest, "Labeled manifest CSV")
        ->required();
    calibrate->add_option("--image-root", calibrate_opts.image_root,
                          "Directory manifest paths are relative to (default: manifest dir)");
    calibrate->add_option("--metric", calibrate_opts.metric, "Metric to calibrate")
        ->check(CLI::IsMember({"laplacian", "fft"}));
    calibrate->add_option("--roi", calibrate_opts.roi, "Marker crop as x,y,w,h");
    calibrate->add_option("--fft-low-freq", calibrate_opts.fft_low_freq,
                          "FFT low-frequency fraction in (0, 0.5)")
        ->check(CLI::Range(1e-9, 0.4999999));
    calibrate->add_option("--out-config", calibrate_opts.out_config,
                          "Where to write the calibrated config JSON")
        ->required();

    EvaluateOpts evaluate_opts;
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Score a classification report against ground-truth labels");
    evaluate->add_option("--manifest", evaluate_opts.manifest, "Labeled manifest CSV")
        ->required();
    evaluate->add_option("--report", evaluate_opts.report, "Report JSON from `classify`")
        ->required();

    SynthOpts synth_opts;
    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a labeled synthetic sky/cloud corpus");
    synth->add_option("--out-dir", synth_opts.out_dir, "Output directory")->required();
    synth->add_option("--n-sharp", synth_opts.n_sharp, "Number of sharp images")
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--n-blurred", synth_opts.n_blurred, "Number of blurred images")
        ->check(CLI::NonNegativeNumber);
    synth->add_option("--sigma", synth_opts.sigma, "Blur sigma range as lo,hi (pixels)");
    synth->add_option("--seed", synth_opts.seed, "Corpus seed");
    synth->add_option("--width", synth_opts.width, "Scene width")->check(CLI::PositiveNumber);
    synth->add_option("--height", synth_opts.height, "Scene height")
        ->check(CLI::PositiveNumber);
    synth->add_option("--sky-top", synth_opts.sky_top, "Sky luma at the top row");
    synth->add_option("--sky-bottom", synth_opts.sky_bottom, "Sky luma at the bottom row");
    synth->add_option("--cloud-octaves", synth_opts.cloud_octaves, "Cloud noise octaves")
        ->check(CLI::PositiveNumber);
    synth->add_option("--cloud-opacity", synth_opts.cloud_opacity, "Cloud opacity in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--marker", synth_opts.marker, "Marker rectangle as x,y,w,h");
    synth->add_option("--marker-luma", synth_opts.marker_luma, "Marker luma in [0, 255]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (classify->parsed()) return run_classify(classify_opts);
        if (calibrate->parsed()) return run_calibrate(calibrate_opts);
        if (evaluate->parsed()) return run_evaluate(evaluate_opts);
        if (synth->parsed()) return run_synth(synth_opts);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "skyblur: " << e.what() << "\n";
        return kExitUsage;
    } catch (const skyblur::ConfigParseError& e) {
        std::cerr << "skyblur: " << e.what() << "\n";
        return kExitUsage;
    } catch (const skyblur::ConfigInvalid& e) {
        std::cerr << "skyblur: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "skyblur: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "skyblur: " << e.what() << "\n";
        return kExitOperational;
    }
    return kExitUsage;
}
