#include "skyblur/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>
#include <thread>
#include <vector>

#include "json.hpp"

#include "skyblur/codec.hpp"
#include "skyblur/errors.hpp"
#include "skyblur/imaging.hpp"

namespace skyblur {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string iso8601_utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string shortest_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// --------------------------------------------------------------------------
// Config JSON
// --------------------------------------------------------------------------

RoiRect parse_roi_json(const json& j) {
    if (!j.is_object()) throw ConfigParseError("field `roi` must be an object");
    RoiRect roi;
    bool saw_x = false, saw_y = false, saw_w = false, saw_h = false;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (!it->is_number_integer()) {
            throw ConfigParseError("field `roi." + key + "` must be an integer");
        }
        const auto v = it->get<long long>();
        if (key == "x") {
            roi.x = static_cast<int>(v);
            saw_x = true;
        } else if (key == "y") {
            roi.y = static_cast<int>(v);
            saw_y = true;
        } else if (key == "width") {
            roi.width = static_cast<int>(v);
            saw_w = true;
        } else if (key == "height") {
            roi.height = static_cast<int>(v);
            saw_h = true;
        } else {
            throw ConfigParseError("unknown field `roi." + key + "`");
        }
    }
    if (!saw_x || !saw_y || !saw_w || !saw_h) {
        throw ConfigParseError("field `roi` requires x, y, width and height");
    }
    if (roi.x < 0 || roi.y < 0) {
        throw ConfigParseError("fields `roi.x` and `roi.y` must be non-negative");
    }
    if (roi.width < 3 || roi.height < 3) {
        throw ConfigParseError("fields `roi.width` and `roi.height` must be at least 3");
    }
    return roi;
}

ClassifierConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigParseError("config root must be a JSON object");
    ClassifierConfig cfg;
    bool saw_metric = false;
    bool saw_threshold = false;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "metric") {
            if (!it->is_string()) {
                throw ConfigParseError("field `metric` must be \"laplacian\" or \"fft\"");
            }
            try {
                cfg.metric = metric_from_string(it->get<std::string>());
            } catch (const std::invalid_argument&) {
                throw ConfigParseError("field `metric` must be \"laplacian\" or \"fft\"");
            }
            saw_metric = true;
        } else if (key == "threshold") {
            if (!it->is_number()) {
                throw ConfigParseError("field `threshold` must be a number");
            }
            cfg.threshold = it->get<double>();
            if (!std::isfinite(cfg.threshold)) {
                throw ConfigParseError("field `threshold` must be finite");
            }
            saw_threshold = true;
        } else if (key == "roi") {
            cfg.roi = parse_roi_json(*it);
        } else if (key == "fft_low_freq_fraction") {
            if (!it->is_number()) {
                throw ConfigParseError("field `fft_low_freq_fraction` must be a number");
            }
            cfg.fft_params.low_freq_fraction = it->get<double>();
            if (!(cfg.fft_params.low_freq_fraction > 0.0 &&
                  cfg.fft_params.low_freq_fraction < 0.5)) {
                throw ConfigParseError("field `fft_low_freq_fraction` must lie in (0, 0.5)");
            }
        } else {
            throw ConfigParseError("unknown config field `" + key + "`");
        }
    }
    if (!saw_metric) throw ConfigParseError("missing required field `metric`");
    if (!saw_threshold) throw ConfigParseError("missing required field `threshold`");
    return cfg;
}

ordered_json config_to_ordered_json(const ClassifierConfig& cfg) {
    ordered_json j;
    j["metric"] = std::string(to_string(cfg.metric));
    j["threshold"] = cfg.threshold;
    if (cfg.roi) {
        j["roi"] = ordered_json{{"x", cfg.roi->x},
                                {"y", cfg.roi->y},
                                {"width", cfg.roi->width},
                                {"height", cfg.roi->height}};
    }
    j["fft_low_freq_fraction"] = cfg.fft_params.low_freq_fraction;
    return j;
}

void validate_config(const ClassifierConfig& cfg) {
    if (!std::isfinite(cfg.threshold)) {
        throw ConfigInvalid("classifier threshold must be finite");
    }
    if (!(cfg.fft_params.low_freq_fraction > 0.0 && cfg.fft_params.low_freq_fraction < 0.5)) {
        throw ConfigInvalid("fft_low_freq_fraction must lie in (0, 0.5)");
    }
    if (cfg.roi) {
        if (cfg.roi->x < 0 || cfg.roi->y < 0 || cfg.roi->width < 3 || cfg.roi->height < 3) {
            throw ConfigInvalid("classifier roi must have non-negative origin and size >= 3x3");
        }
    }
}

// --------------------------------------------------------------------------
// CSV helpers
// --------------------------------------------------------------------------

bool csv_needs_quoting(std::string_view field) {
    if (field.empty()) return false;
    if (field.find_first_of(",\"\n\r") != std::string_view::npos) return true;
    return std::isspace(static_cast<unsigned char>(field.front())) != 0 ||
           std::isspace(static_cast<unsigned char>(field.back())) != 0;
}

std::string csv_quote(std::string_view field) {
    if (!csv_needs_quoting(field)) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

// --------------------------------------------------------------------------
// Config files
// --------------------------------------------------------------------------

ClassifierConfig parse_config_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

std::string config_to_json(const ClassifierConfig& config) {
    return config_to_ordered_json(config).dump(2) + "\n";
}

ClassifierConfig load_config(const std::filesystem::path& path) {
    const auto bytes = read_binary_file(path);
    return parse_config_json(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                              bytes.size()));
}

void save_config(const ClassifierConfig& config, const std::filesystem::path& path) {
    const std::string text = config_to_json(config);
    write_binary_file(path, std::span<const std::uint8_t>(
                                reinterpret_cast<const std::uint8_t*>(text.data()),
                                text.size()));
}

// --------------------------------------------------------------------------
// Manifest files
// --------------------------------------------------------------------------

LabeledManifest parse_manifest_csv(std::string_view text) {
    LabeledManifest manifest;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = eol == std::string_view::npos
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::string path;
        std::string_view rest;
        if (line.front() == '"') {
            // Quoted path; "" is an escaped quote.
            std::size_t i = 1;
            bool closed = false;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        path += '"';
                        i += 2;
                        continue;
                    }
                    closed = true;
                    ++i;
                    break;
                }
                path += line[i];
                ++i;
            }
            if (!closed || i >= line.size() || line[i] != ',') {
                throw ManifestParseError("line " + std::to_string(line_no) +
                                         ": expected `path,label`");
            }
            rest = line.substr(i + 1);
        } else {
            // Label is the final field, so split at the last comma; this keeps
            // hand-written rows with commas in the path working.
            const std::size_t comma = line.rfind(',');
            if (comma == std::string_view::npos) {
                throw ManifestParseError("line " + std::to_string(line_no) +
                                         ": expected `path,label`");
            }
            path = std::string(line.substr(0, comma));
            rest = line.substr(comma + 1);
        }

        const std::string_view label = trim(rest);
        bool blurred = false;
        if (label == "true") {
            blurred = true;
        } else if (label == "false") {
            blurred = false;
        } else {
            throw ManifestParseError("line " + std::to_string(line_no) + ": bad label `" +
                                     std::string(label) + "`, expected true or false");
        }
        if (!seen.insert(path).second) {
            throw DuplicatePath("duplicate manifest path `" + path + "` (line " +
                                std::to_string(line_no) + ")");
        }
        manifest.entries.push_back({std::move(path), blurred});
    }
    return manifest;
}

std::string manifest_to_csv(const LabeledManifest& manifest) {
    std::set<std::string_view> seen;
    std::string out;
    for (const ManifestEntry& e : manifest.entries) {
        if (!seen.insert(e.path).second) {
            throw DuplicatePath("duplicate manifest path `" + e.path + "`");
        }
        out += csv_quote(e.path);
        out += e.blurred ? ",true\n" : ",false\n";
    }
    return out;
}

LabeledManifest load_manifest(const std::filesystem::path& path) {
    const auto bytes = read_binary_file(path);
    return parse_manifest_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()),
                                               bytes.size()));
}

void save_manifest(const LabeledManifest& manifest, const std::filesystem::path& path) {
    const std::string text = manifest_to_csv(manifest);
    write_binary_file(path, std::span<const std::uint8_t>(
                                reinterpret_cast<const std::uint8_t*>(text.data()),
                                text.size()));
}

// --------------------------------------------------------------------------
// Batch runs
// --------------------------------------------------------------------------

RunReport run_batch(const std::filesystem::path& dir,
                    const ClassifierConfig& config,
                    int parallelism) {
    validate_config(config);
    if (parallelism < 1) throw ConfigInvalid("parallelism must be at least 1");
    if (!std::filesystem::is_directory(dir)) {
        throw DirectoryNotFound("not a directory: " + dir.string());
    }

    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") {
            names.push_back(entry.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());

    RunReport report;
    report.config = config;
    report.started = iso8601_utc_now();
    report.records.resize(names.size());

    const auto process = [&](std::size_t i) {
        RunRecord& record = report.records[i];
        record.path = names[i];
        record.metric = config.metric;
        try {
            const GrayRaster gray = to_grayscale(load_image(dir / names[i]));
            const Verdict verdict = classify(gray, config);
            record.score = verdict.score.value;
            record.blurred = verdict.blurred;
        } catch (const std::exception& e) {
            record.error = e.what();
        }
    };

    const std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(parallelism), names.size());
    if (worker_count <= 1) {
        for (std::size_t i = 0; i < names.size(); ++i) process(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < names.size();
                     i = next.fetch_add(1)) {
                    process(i);
                }
            });
        }
        for (std::thread& t : workers) t.join();
    }

    report.finished = iso8601_utc_now();
    return report;
}

// --------------------------------------------------------------------------
// Report serialization
// --------------------------------------------------------------------------

std::string report_to_json(const RunReport& report) {
    ordered_json j;
    j["config"] = config_to_ordered_json(report.config);
    j["started"] = report.started;
    j["finished"] = report.finished;
    ordered_json records = ordered_json::array();
    for (const RunRecord& r : report.records) {
        ordered_json rec;
        rec["path"] = r.path;
        rec["metric"] = std::string(to_string(r.metric));
        if (r.score) rec["score"] = *r.score;
        if (r.blurred) rec["blurred"] = *r.blurred;
        rec["error"] = r.error;
        records.push_back(std::move(rec));
    }
    j["records"] = std::move(records);
    return j.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
    std::string out = "path,score,verdict,error\n";
    for (const RunRecord& r : report.records) {
        out += csv_quote(r.path);
        out += ',';
        if (r.score) out += shortest_double(*r.score);
        out += ',';
        if (r.blurred) out += *r.blurred ? "true" : "false";
        out += ',';
        out += csv_quote(r.error);
        out += '\n';
    }
    return out;
}

RunReport report_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigParseError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("config") || !j.contains("records") ||
        !j["records"].is_array()) {
        throw ConfigParseError("report requires `config` and `records` fields");
    }
    RunReport report;
    report.config = config_from_json(j["config"]);
    report.started = j.value("started", std::string());
    report.finished = j.value("finished", std::string());
    for (const json& rec : j["records"]) {
        if (!rec.is_object() || !rec.contains("path")) {
            throw ConfigParseError("report record requires a `path` field");
        }
        RunRecord r;
        r.path = rec["path"].get<std::string>();
        try {
            r.metric = metric_from_string(rec.value("metric", "laplacian"));
        } catch (const std::invalid_argument&) {
            throw ConfigParseError("report record `" + r.path + "` has a bad metric");
        }
        if (rec.contains("score")) r.score = rec["score"].get<double>();
        if (rec.contains("blurred")) r.blurred = rec["blurred"].get<bool>();
        r.error = rec.value("error", std::string());
        const bool has_verdict = r.score.has_value() && r.blurred.has_value();
        if (has_verdict == !r.error.empty()) {
            throw ConfigParseError("report record `" + r.path +
                                   "` must carry either a verdict or an error");
        }
        report.records.push_back(std::move(r));
    }
    return report;
}

}  // namespace skyblur
