#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <string>
#include <vector>

#include "skyblur/codec.hpp"
#include "skyblur/pipeline.hpp"
#include "cli_util.hpp"
#include "test_util.hpp"

using namespace skyblur;
using testutil::CliResult;
using testutil::TempDir;
using testutil::run_cli;

namespace {

// Small scene keeps each spawned run fast; marker must fit 96x96.
const std::vector<std::string> kSceneFlags = {
    "--width", "96", "--height", "96", "--marker", "40,28,10,32",
};

std::vector<std::string> synth_args(const std::string& out_dir, int sharp, int blurred,
                                    const std::string& seed) {
    std::vector<std::string> args = {"synth",      "--out-dir", out_dir,
                                     "--n-sharp",  std::to_string(sharp),
                                     "--n-blurred", std::to_string(blurred),
                                     "--seed",     seed};
    args.insert(args.end(), kSceneFlags.begin(), kSceneFlags.end());
    return args;
}

const std::string kRoi = "34,22,22,44";  // marker rect inflated by 6

}  // namespace

TEST_CASE("synth writes a deterministic corpus") {
    TempDir dir("cli_synth");
    const std::string a = (dir.path() / "a").string();
    const std::string b = (dir.path() / "b").string();

    CHECK(run_cli(synth_args(a, 3, 3, "11")).exit_code == 0);
    CHECK(run_cli(synth_args(b, 3, 3, "11")).exit_code == 0);

    const LabeledManifest manifest = load_manifest(std::filesystem::path(a) / "manifest.csv");
    REQUIRE(manifest.entries.size() == 6);
    for (const ManifestEntry& e : manifest.entries) {
        CHECK(read_binary_file(std::filesystem::path(a) / e.path) ==
              read_binary_file(std::filesystem::path(b) / e.path));
    }
    CHECK(read_binary_file(std::filesystem::path(a) / "manifest.csv") ==
          read_binary_file(std::filesystem::path(b) / "manifest.csv"));
}

TEST_CASE("synth validates the sigma range") {
    TempDir dir("cli_synth_bad");
    auto args = synth_args((dir.path() / "x").string(), 1, 1, "1");
    args.push_back("--sigma");
    args.push_back("5,2");
    const CliResult r = run_cli(args);
    CHECK(r.exit_code == 2);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("synth with zero images writes an empty manifest") {
    TempDir dir("cli_synth_empty");
    const std::string out = (dir.path() / "empty").string();
    CHECK(run_cli(synth_args(out, 0, 0, "1")).exit_code == 0);
    CHECK(load_manifest(std::filesystem::path(out) / "manifest.csv").entries.empty());
}

TEST_CASE("classify then evaluate matches the library end to end") {
    TempDir dir("cli_loop");
    const std::string corpus = (dir.path() / "corpus").string();
    REQUIRE(run_cli(synth_args(corpus, 4, 4, "23")).exit_code == 0);

    // calibrate
    const std::string config_path = (dir.path() / "config.json").string();
    const CliResult cal = run_cli({"calibrate", "--manifest", corpus + "/manifest.csv",
                                   "--metric", "laplacian", "--roi", kRoi, "--out-config",
                                   config_path});
    REQUIRE(cal.exit_code == 0);
    CHECK(cal.err.find("train_accuracy: 1") != std::string::npos);

    // classify
    const std::string report_path = (dir.path() / "report.json").string();
    const CliResult cls = run_cli({"classify", "--dir", corpus, "--config", config_path,
                                   "--out", report_path, "--jobs", "2"});
    REQUIRE(cls.exit_code == 0);
    CHECK(cls.err.find("classified: 8") != std::string::npos);
    CHECK(cls.err.find("errors: 0") != std::string::npos);

    // evaluate
    const CliResult ev = run_cli({"evaluate", "--manifest", corpus + "/manifest.csv",
                                  "--report", report_path});
    REQUIRE(ev.exit_code == 0);
    CHECK(ev.out.find("\"accuracy\": 1") != std::string::npos);

    // the CLI adds no logic on top of the library
    const RunReport direct =
        run_batch(corpus, load_config(config_path), 1);
    const auto report_bytes = read_binary_file(report_path);
    const RunReport parsed = report_from_json(std::string_view(
        reinterpret_cast<const char*>(report_bytes.data()), report_bytes.size()));
    CHECK(parsed.records == direct.records);

    // summary counts match the report
    int blurred = 0;
    for (const RunRecord& r : parsed.records) blurred += (r.blurred && *r.blurred) ? 1 : 0;
    CHECK(cls.err.find("blurred: " + std::to_string(blurred)) != std::string::npos);
}

TEST_CASE("classify exit codes") {
    TempDir dir("cli_classify_codes");
    const std::string corpus = (dir.path() / "c").string();
    REQUIRE(run_cli(synth_args(corpus, 1, 0, "3")).exit_code == 0);

    SUBCASE("missing config file is a usage error") {
        const CliResult r = run_cli({"classify", "--dir", corpus, "--config",
                                     (dir.path() / "absent.json").string()});
        CHECK(r.exit_code == 2);
        CHECK_FALSE(r.err.empty());
    }
    SUBCASE("bad config content is a usage error") {
        const std::string bad = (dir.path() / "bad.json").string();
        const std::string text = "{\"metric\": \"fft\"}";
        write_binary_file(bad, std::span<const std::uint8_t>(
                                   reinterpret_cast<const std::uint8_t*>(text.data()),
                                   text.size()));
        CHECK(run_cli({"classify", "--dir", corpus, "--config", bad}).exit_code == 2);
    }
    SUBCASE("missing directory is an operational error") {
        const std::string cfg = (dir.path() / "cfg.json").string();
        save_config(default_config(MetricKind::laplacian), cfg);
        const CliResult r = run_cli({"classify", "--dir", (dir.path() / "nope").string(),
                                     "--config", cfg});
        CHECK(r.exit_code == 1);
    }
    SUBCASE("unknown flags are usage errors") {
        CHECK(run_cli({"classify", "--nonsense"}).exit_code == 2);
        CHECK(run_cli({"frobnicate"}).exit_code == 2);
    }
    SUBCASE("record errors do not fail the batch") {
        const std::string cfg = (dir.path() / "cfg2.json").string();
        save_config(default_config(MetricKind::laplacian), cfg);
        const std::string junk = "junk bytes";
        write_binary_file(std::filesystem::path(corpus) / "junk.png",
                          std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(junk.data()),
                              junk.size()));
        const CliResult r = run_cli({"classify", "--dir", corpus, "--config", cfg});
        CHECK(r.exit_code == 0);
        CHECK(r.err.find("errors: 1") != std::string::npos);
    }
}

TEST_CASE("calibrate exit codes and degenerate manifests") {
    TempDir dir("cli_calibrate_codes");

    SUBCASE("empty manifest") {
        const std::string manifest = (dir.path() / "empty.csv").string();
        save_manifest(LabeledManifest{}, manifest);
        const CliResult r = run_cli({"calibrate", "--manifest", manifest, "--out-config",
                                     (dir.path() / "out.json").string()});
        CHECK(r.exit_code == 1);
    }
    SUBCASE("unscoreable image") {
        const std::string manifest = (dir.path() / "m.csv").string();
        LabeledManifest m;
        m.entries.push_back({"ghost.png", true});
        save_manifest(m, manifest);
        const CliResult r = run_cli({"calibrate", "--manifest", manifest, "--out-config",
                                     (dir.path() / "out.json").string()});
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("ghost.png") != std::string::npos);
    }
    SUBCASE("single-label manifest calibrates to accuracy 1") {
        const std::string corpus = (dir.path() / "corpus").string();
        REQUIRE(run_cli(synth_args(corpus, 2, 0, "9")).exit_code == 0);
        const std::string out_config = (dir.path() / "one_label.json").string();
        const CliResult r = run_cli({"calibrate", "--manifest", corpus + "/manifest.csv",
                                     "--roi", kRoi, "--out-config", out_config});
        REQUIRE(r.exit_code == 0);
        CHECK(r.err.find("train_accuracy: 1") != std::string::npos);
        const ClassifierConfig cfg = load_config(out_config);
        // everything must classify as the one observed label (sharp)
        const RunReport report = run_batch(corpus, cfg, 1);
        for (const RunRecord& rec : report.records) {
            REQUIRE(rec.blurred.has_value());
            CHECK_FALSE(*rec.blurred);
        }
    }
}

TEST_CASE("evaluate detects manifest/report mismatches") {
    TempDir dir("cli_evaluate_codes");
    const std::string corpus = (dir.path() / "corpus").string();
    REQUIRE(run_cli(synth_args(corpus, 2, 2, "31")).exit_code == 0);

    const std::string cfg = (dir.path() / "cfg.json").string();
    save_config(default_config(MetricKind::laplacian), cfg);
    const std::string report_path = (dir.path() / "report.json").string();
    REQUIRE(run_cli({"classify", "--dir", corpus, "--config", cfg, "--out", report_path})
                .exit_code == 0);

    SUBCASE("manifest path absent from the report") {
        LabeledManifest manifest =
            load_manifest(std::filesystem::path(corpus) / "manifest.csv");
        manifest.entries.push_back({"missing.png", true});
        const std::string extended = (dir.path() / "extended.csv").string();
        save_manifest(manifest, extended);

        const CliResult r =
            run_cli({"evaluate", "--manifest", extended, "--report", report_path});
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("missing.png") != std::string::npos);
    }

    SUBCASE("error record among evaluated paths") {
        const std::string junk = "junk bytes";
        write_binary_file(std::filesystem::path(corpus) / "zz_junk.png",
                          std::span<const std::uint8_t>(
                              reinterpret_cast<const std::uint8_t*>(junk.data()),
                              junk.size()));
        LabeledManifest manifest =
            load_manifest(std::filesystem::path(corpus) / "manifest.csv");
        manifest.entries.push_back({"zz_junk.png", true});
        const std::string extended = (dir.path() / "with_junk.csv").string();
        save_manifest(manifest, extended);

        REQUIRE(run_cli({"classify", "--dir", corpus, "--config", cfg, "--out", report_path})
                    .exit_code == 0);
        const CliResult r =
            run_cli({"evaluate", "--manifest", extended, "--report", report_path});
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("zz_junk.png") != std::string::npos);
    }
}

TEST_CASE("classify emits CSV reports on request") {
    TempDir dir("cli_csv");
    const std::string corpus = (dir.path() / "c").string();
    REQUIRE(run_cli(synth_args(corpus, 1, 1, "5")).exit_code == 0);
    const std::string cfg = (dir.path() / "cfg.json").string();
    save_config(default_config(MetricKind::laplacian), cfg);

    const CliResult r =
        run_cli({"classify", "--dir", corpus, "--config", cfg, "--format", "csv"});
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("path,score,verdict,error\n", 0) == 0);
    CHECK(r.out.find("img_0000.png,") != std::string::npos);
}

TEST_CASE("synth into the same directory twice is idempotent") {
    TempDir dir("cli_synth_idem");
    const std::string out = (dir.path() / "same").string();
    REQUIRE(run_cli(synth_args(out, 2, 1, "13")).exit_code == 0);
    const auto before = read_binary_file(std::filesystem::path(out) / "img_0002.png");
    REQUIRE(run_cli(synth_args(out, 2, 1, "13")).exit_code == 0);
    CHECK(read_binary_file(std::filesystem::path(out) / "img_0002.png") == before);
}
