// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "msps/msps.h"
#include "test_support.hpp"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    msps_string_free(s);
    return out;
}

msps_bitmap* make_gray(uint32_t w, uint32_t h, const std::vector<double>& v) {
    msps_bitmap* b = nullptr;
    REQUIRE(msps_bitmap_create(w, h, 1, v.data(), &b) == MSPS_OK);
    return b;
}

}  // namespace

TEST_CASE("library metadata") {
    CHECK(std::string(msps_version()) == "0.1.0");
    CHECK(std::string(msps_status_name(MSPS_ERR_MALFORMED_PNG)) == "malformed_png");
    msps_metric m;
    CHECK(msps_metric_from_name("pixel_similarity", &m) == MSPS_OK);
    CHECK(m == MSPS_METRIC_PIXEL_SIMILARITY);
    CHECK(msps_metric_from_name("ssim", &m) == MSPS_ERR_INVALID_ARGUMENT);
    CHECK(std::string(msps_last_error()).find("ssim") != std::string::npos);
    CHECK(std::string(msps_metric_name(MSPS_METRIC_MSE)) == "mse");
    const msps_filter_config c = msps_filter_config_default();
    CHECK(c.threshold == 0.98);
    CHECK(c.workers == 1);
    msps_color color;
    CHECK(msps_color_from_hex("#ff8000", &color) == MSPS_OK);
    CHECK(color.r == 1.0);
    CHECK(color.g == 128.0 / 255.0);
    CHECK(msps_color_from_hex("00ff00", &color) == MSPS_OK);
    CHECK(msps_color_from_hex("green", &color) == MSPS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bitmaps and scores") {
    msps_bitmap* zeros = make_gray(2, 2, {0, 0, 0, 0});
    msps_bitmap* one_hot = make_gray(2, 2, {1, 0, 0, 0});
    double v = -1.0, t = -1.0;
    CHECK(msps_score(zeros, one_hot, MSPS_METRIC_MSPS, &v, &t) == MSPS_OK);
    CHECK(v == 0.84375);
    CHECK(t >= 0.0);
    CHECK(msps_score(zeros, one_hot, MSPS_METRIC_MSE, &v, nullptr) == MSPS_OK);
    CHECK(v == 0.25);
    CHECK(msps_bitmap_width(zeros) == 2);
    CHECK(msps_bitmap_channels(zeros) == 1);
    CHECK(msps_bitmap_values(one_hot)[0] == 1.0);

    msps_bitmap* pooled = nullptr;
    CHECK(msps_bitmap_pool2x(one_hot, &pooled) == MSPS_OK);
    CHECK(msps_bitmap_values(pooled)[0] == 0.25);

    msps_bitmap* wide = make_gray(3, 2, {0, 0, 0, 0, 0, 0});
    CHECK(msps_score(zeros, wide, MSPS_METRIC_MSPS, &v, nullptr) == MSPS_ERR_DIMENSION_MISMATCH);
    CHECK(std::strlen(msps_last_error()) > 0);

    msps_bitmap *a = nullptr, *b = nullptr;
    const msps_color white{1, 1, 1};
    CHECK(msps_align_pair(zeros, wide, MSPS_ALIGN_PAD_TO_MAX, &white, &a, &b) == MSPS_OK);
    CHECK(msps_bitmap_width(a) == 3);
    CHECK(msps_bitmap_values(a)[2] == 1.0);
    CHECK(msps_align_pair(zeros, wide, MSPS_ALIGN_STRICT, &white, &a, &b) == MSPS_ERR_DIMENSION_MISMATCH);

    const double bad[] = {2.0};
    msps_bitmap* invalid = nullptr;
    CHECK(msps_bitmap_create(1, 1, 1, bad, &invalid) == MSPS_ERR_INVALID_ARGUMENT);
    CHECK(invalid == nullptr);
    CHECK(msps_bitmap_grayscale(zeros, &invalid) == MSPS_ERR_CHANNEL_MISMATCH);

    CHECK(msps_level_count(1920, 1080) == 11);
    CHECK(msps_level_count(0, 5) == 0);

    for (msps_bitmap* p : {zeros, one_hot, pooled, wide, a, b}) msps_bitmap_free(p);
    msps_bitmap_free(nullptr);
}

TEST_CASE("null arguments are rejected") {
    double v;
    CHECK(msps_score(nullptr, nullptr, MSPS_METRIC_MSPS, &v, nullptr) == MSPS_ERR_INVALID_ARGUMENT);
    CHECK(msps_bitmap_load_png(nullptr, nullptr, nullptr) == MSPS_ERR_INVALID_ARGUMENT);
    CHECK(msps_pearson(nullptr, nullptr, 3, nullptr) == MSPS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("pearson") {
    const double x[] = {1, 2, 3, 4};
    const double y[] = {1, 3, 2, 4};
    msps_correlation c;
    REQUIRE(msps_pearson(x, y, 4, &c) == MSPS_OK);
    CHECK(c.r == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(c.n == 4);
    CHECK(c.underflow == 0);
    CHECK(msps_pearson(x, y, 2, &c) == MSPS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("png round trip through files") {
    msps::test::TempDir dir;
    msps_bitmap* half = make_gray(3, 3, std::vector<double>(9, 0.5));
    const std::string path = (dir / "half.png").string();
    REQUIRE(msps_bitmap_save_png(half, path.c_str()) == MSPS_OK);
    msps_bitmap* loaded = nullptr;
    REQUIRE(msps_bitmap_load_png(path.c_str(), nullptr, &loaded) == MSPS_OK);
    CHECK(msps_bitmap_values(loaded)[4] == 128.0 / 255.0);
    CHECK(msps_bitmap_load_png((dir / "none.png").string().c_str(), nullptr, &loaded) == MSPS_ERR_FILE_NOT_FOUND);
    msps::test::write_file(dir / "bad.png", "garbage");
    msps_bitmap* bad = nullptr;
    CHECK(msps_bitmap_load_png((dir / "bad.png").string().c_str(), nullptr, &bad) == MSPS_ERR_MALFORMED_PNG);
    msps_bitmap_free(half);
    msps_bitmap_free(loaded);
}

TEST_CASE("perturbations and robustness report") {
    msps_bitmap* ref = nullptr;
    REQUIRE(msps_structured_test_image(64, 64, &ref) == MSPS_OK);
    size_t count = 0;
    REQUIRE(msps_default_perturbations(64, 64, nullptr, 0, &count) == MSPS_OK);
    CHECK(count == 5);
    std::vector<msps_perturbation> ps(count + 1);
    REQUIRE(msps_default_perturbations(64, 64, ps.data() + 1, count, &count) == MSPS_OK);
    ps[0] = msps_perturbation_make(MSPS_PERTURB_IDENTITY, 0, 0);

    char label[8];
    msps_perturbation_label(&ps[5], label, sizeof label);
    CHECK(std::string(label) == "transla");  // truncated, terminated
    char full[64];
    msps_perturbation_label(&ps[5], full, sizeof full);
    CHECK(std::string(full) == "translate(1,1)");

    msps_bitmap* moved = nullptr;
    REQUIRE(msps_perturb_apply(ref, &ps[5], &moved) == MSPS_OK);
    CHECK(msps_bitmap_values(moved)[0] == 1.0);
    msps_perturbation bad = msps_perturbation_make(MSPS_PERTURB_SCALE, -1.0, 0);
    msps_bitmap* out = nullptr;
    CHECK(msps_perturb_apply(ref, &bad, &out) == MSPS_ERR_INVALID_ARGUMENT);

    const msps_metric metrics[] = {MSPS_METRIC_MSPS, MSPS_METRIC_MSE};
    msps_report* report = nullptr;
    REQUIRE(msps_robustness_report(ref, metrics, 2, ps.data(), ps.size(), 2, &report) == MSPS_OK);
    CHECK(msps_report_rows(report) == 2);
    CHECK(msps_report_columns(report) == 6);
    double loss = -1;
    CHECK(msps_report_cell(report, 0, 0, &loss, nullptr) == MSPS_OK);
    CHECK(loss == 0.0);
    CHECK(msps_report_cell(report, 2, 0, &loss, nullptr) == MSPS_ERR_INVALID_ARGUMENT);
    char* text = nullptr;
    REQUIRE(msps_report_to_json(report, &text) == MSPS_OK);
    CHECK(nlohmann::json::parse(take(text)).size() == 12);
    REQUIRE(msps_report_to_csv(report, &text) == MSPS_OK);
    CHECK(take(text).rfind("metric,perturbation,loss,wall_time_s", 0) == 0);
    msps_report_free(report);
    msps_bitmap_free(ref);
    msps_bitmap_free(moved);
}

TEST_CASE("rank over bitmaps and files") {
    msps::test::TempDir dir;
    msps_bitmap* ref = make_gray(2, 2, {0.2, 0.4, 0.6, 0.8});
    msps_bitmap* far = make_gray(2, 2, {1, 1, 1, 1});
    msps_bitmap* near = make_gray(2, 2, {0.2, 0.4, 0.6, 0.7});
    const msps_bitmap* cands[] = {far, near, ref};
    size_t ordering[3];
    double scores[3];
    REQUIRE(msps_rank(ref, cands, 3, MSPS_METRIC_MSPS, MSPS_ALIGN_STRICT, nullptr, ordering, scores) == MSPS_OK);
    CHECK(ordering[0] == 2);
    CHECK(ordering[1] == 1);
    CHECK(ordering[2] == 0);
    CHECK(scores[2] == 1.0);

    const std::string r = (dir / "ref.png").string();
    const std::string n = (dir / "near.png").string();
    const std::string f = (dir / "far.png").string();
    msps_bitmap_save_png(ref, r.c_str());
    msps_bitmap_save_png(near, n.c_str());
    msps_bitmap_save_png(far, f.c_str());
    const std::string missing = (dir / "missing.png").string();
    const char* paths[] = {f.c_str(), missing.c_str(), n.c_str()};
    char* json = nullptr;
    REQUIRE(msps_rank_files(r.c_str(), paths, 3, MSPS_METRIC_MSE, MSPS_ALIGN_STRICT, nullptr, &json) == MSPS_OK);
    const auto j = nlohmann::json::parse(take(json));
    CHECK(j["ordering"] == nlohmann::json::array({2, 0, 1}));
    CHECK(j["candidates"][1]["score"].is_null());
    CHECK(j["candidates"][1]["error"].get<std::string>().rfind("file_not_found", 0) == 0);
    CHECK(j["candidates"][0]["score"].get<double>() > 0.0);  // raw mse, not negated
    CHECK(msps_rank_files(r.c_str(), paths, 0, MSPS_METRIC_MSE, MSPS_ALIGN_STRICT, nullptr, &json) ==
          MSPS_ERR_INVALID_ARGUMENT);
    for (msps_bitmap* b : {ref, far, near}) msps_bitmap_free(b);
}

TEST_CASE("dataset workflow") {
    msps::test::TempDir dir;
    char* text = nullptr;
    REQUIRE(msps_synth_dataset("size", 5, 3, dir.path().string().c_str(), 2, nullptr, &text) == MSPS_OK);
    CHECK(nlohmann::json::parse(take(text))["items"] == 5);
    REQUIRE(msps_dataset_stats((dir / "manifest.jsonl").string().c_str(), "whitespace", &text) == MSPS_OK);
    CHECK(nlohmann::json::parse(take(text))["items"] == 5);
    CHECK(msps_synth_dataset("nope", 5, 3, dir.path().string().c_str(), 1, nullptr, &text) ==
          MSPS_ERR_UNKNOWN_TEMPLATE);
    CHECK(msps_dataset_stats((dir / "manifest.jsonl").string().c_str(), "bert", &text) == MSPS_ERR_INVALID_ARGUMENT);

    REQUIRE(msps_synth_verify("color_responsive", 10, 0, &text) == MSPS_OK);
    const auto v = nlohmann::json::parse(take(text));
    CHECK(v["passed"] == 10);
    CHECK(v["pixel_checked"] == 10);

    REQUIRE(msps_synth_generate("color", 42, &text) == MSPS_OK);
    const auto item = nlohmann::json::parse(take(text));
    CHECK(item["item_id"] == "color-000000000000002a");
    CHECK(item["has_scene"] == true);
    CHECK(item["mobile_svg"].is_null());
    msps_bitmap* raster = nullptr;
    REQUIRE(msps_svg_rasterize(item["svg"].get<std::string>().c_str(), &raster) == MSPS_OK);
    CHECK(msps_bitmap_width(raster) == 1280);
    msps_bitmap_free(raster);
    CHECK(msps_svg_rasterize("<svg width=\"1\" height=\"1\"><path/></svg>", &raster) == MSPS_ERR_UNSUPPORTED_SVG);
}

TEST_CASE("filter directory") {
    msps::test::TempDir dir;
    msps_bitmap* img = make_gray(4, 4, std::vector<double>(16, 0.25));
    for (const char* name : {"a.ref.png", "a.cand.png", "b.ref.png"})
        msps_bitmap_save_png(img, (dir / name).string().c_str());
    msps_filter_config config = msps_filter_config_default();
    config.workers = 4;
    const std::string manifest = (dir / "out.jsonl").string();
    char* text = nullptr;
    REQUIRE(msps_filter_directory(dir.path().string().c_str(), &config, manifest.c_str(), 0, &text) == MSPS_OK);
    const auto j = nlohmann::json::parse(take(text));
    CHECK(j["summary"]["pass"] == 1);
    CHECK(j["warnings"][0] == "unpaired reference: b");
    const auto line = nlohmann::json::parse(msps::test::read_file(manifest));
    CHECK(line["verdict"] == "pass");
    CHECK_FALSE(line.contains("wall_time_s"));

    config.threshold = 2.0;
    CHECK(msps_filter_directory(dir.path().string().c_str(), &config, nullptr, 0, &text) ==
          MSPS_ERR_INVALID_ARGUMENT);
    config.threshold = 0.5;
    CHECK(msps_filter_directory((dir / "nope").string().c_str(), &config, nullptr, 0, &text) == MSPS_ERR_IO);
    msps_bitmap_free(img);
}
