// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0
//
// msps command-line tool. Results go to stdout as JSON (or CSV for perturb
// with --csv); diagnostics go to stderr.
//
// Exit codes: 0 ok, 1 per-item errors with `filter --strict`, 2 I/O,
// 3 validation, 4 usage.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "msps/msps.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kItemErrors = 1, kIo = 2, kValidation = 3, kUsage = 4 };

struct Failure {
    int exit_code;
    std::string message;
};

int exit_code_for(msps_status s) {
    switch (s) {
        case MSPS_ERR_FILE_NOT_FOUND:
        case MSPS_ERR_IO:
        case MSPS_ERR_MALFORMED_PNG:
        case MSPS_ERR_UNSUPPORTED_PNG:
        case MSPS_ERR_INTERNAL:
            return kIo;
        default:
            return kValidation;
    }
}

void check(msps_status s, const std::string& context = {}) {
    if (s == MSPS_OK) return;
    std::string msg = msps_status_name(s);
    msg += ": ";
    if (!context.empty()) msg += context + ": ";
    msg += msps_last_error();
    throw Failure{exit_code_for(s), msg};
}

struct BitmapDeleter {
    void operator()(msps_bitmap* b) const { msps_bitmap_free(b); }
};
using BitmapPtr = std::unique_ptr<msps_bitmap, BitmapDeleter>;

struct StringDeleter {
    void operator()(char* s) const { msps_string_free(s); }
};

std::string take(char* s) {
    std::unique_ptr<char, StringDeleter> owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

BitmapPtr load(const std::string& path) {
    msps_bitmap* b = nullptr;
    check(msps_bitmap_load_png(path.c_str(), nullptr, &b));
    return BitmapPtr(b);
}

std::vector<msps_metric> parse_metrics(const std::vector<std::string>& names) {
    std::vector<msps_metric> out;
    for (const auto& name : names) {
        msps_metric m;
        check(msps_metric_from_name(name.c_str(), &m));
        bool seen = false;
        for (auto existing : out) seen = seen || existing == m;
        if (!seen) out.push_back(m);
    }
    return out;
}

msps_metric parse_metric(const std::string& name) { return parse_metrics({name}).front(); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw Failure{kIo, "cannot write " + path};
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Globals {
    bool json_out = false;
    bool csv_out = false;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string align = "strict";
    std::string fill = "#ffffff";

    msps_align_mode align_mode() const {
        return align == "pad" ? MSPS_ALIGN_PAD_TO_MAX : MSPS_ALIGN_STRICT;
    }
    msps_color fill_color() const {
        msps_color c;
        check(msps_color_from_hex(fill.c_str(), &c), "--fill");
        return c;
    }
    void reject_csv(const char* command) const {
        if (csv_out) throw Failure{kUsage, std::string("--csv is not supported by ") + command};
    }
};

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
    std::string reference;
    std::string candidate;
    std::vector<std::string> metrics{"msps"};
};

int run_compare(const CompareArgs& args, const Globals& g) {
    g.reject_csv("compare");
    const auto metrics = parse_metrics(args.metrics);
    const msps_color fill = g.fill_color();
    BitmapPtr ref = load(args.reference);
    BitmapPtr cand = load(args.candidate);

    msps_bitmap* a = nullptr;
    msps_bitmap* b = nullptr;
    check(msps_align_pair(ref.get(), cand.get(), g.align_mode(), &fill, &a, &b));
    BitmapPtr aligned_a(a), aligned_b(b);

    json scores = json::object();
    json timings = json::object();
    for (msps_metric m : metrics) {
        double value = 0.0, seconds = 0.0;
        check(msps_score(aligned_a.get(), aligned_b.get(), m, &value, &seconds));
        scores[msps_metric_name(m)] = value;
        timings[msps_metric_name(m)] = seconds;
    }
    json out;
    out["pair"] = {{"reference", args.reference},
                   {"candidate", args.candidate},
                   {"width", msps_bitmap_width(aligned_a.get())},
                   {"height", msps_bitmap_height(aligned_a.get())},
                   {"channels", msps_bitmap_channels(aligned_a.get())},
                   {"align", g.align}};
    out["scores"] = std::move(scores);
    out["timings"] = std::move(timings);
    print_json(out);
    return kOk;
}

// ---- perturb ---------------------------------------------------------------

struct PerturbArgs {
    std::string reference;  // empty: bundled structured test image
    std::uint32_t size = 512;
    std::vector<std::string> ops{"suite"};
    double degrees = 5.0;
    double dx = 1.0;
    double dy = 1.0;
    double factor = 0.5;
    double fx = 0.8;
    double fy = 1.0;
    std::string interpolation = "bilinear";
    std::vector<std::string> metrics{"msps", "pixel_similarity", "mse"};
    std::string out;
    std::string save_images;
};

std::string file_safe(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') out += c;
        else if (c == ',') out += '_';
    }
    return out;
}

int run_perturb(const PerturbArgs& args, const Globals& g) {
    if (g.json_out && g.csv_out) throw Failure{kUsage, "--json and --csv are mutually exclusive"};
    const auto metrics = parse_metrics(args.metrics);
    const msps_color fill = g.fill_color();

    BitmapPtr ref;
    if (args.reference.empty()) {
        msps_bitmap* b = nullptr;
        check(msps_structured_test_image(args.size, args.size, &b));
        ref.reset(b);
    } else {
        ref = load(args.reference);
    }
    const std::uint32_t w = msps_bitmap_width(ref.get());
    const std::uint32_t h = msps_bitmap_height(ref.get());

    std::vector<msps_perturbation> perturbations;
    for (const auto& op : args.ops) {
        if (op == "suite") {
            std::size_t count = 0;
            check(msps_default_perturbations(w, h, nullptr, 0, &count));
            std::vector<msps_perturbation> suite(count);
            check(msps_default_perturbations(w, h, suite.data(), suite.size(), &count));
            perturbations.insert(perturbations.end(), suite.begin(), suite.end());
        } else if (op == "identity") {
            perturbations.push_back(msps_perturbation_make(MSPS_PERTURB_IDENTITY, 0, 0));
        } else if (op == "rotate") {
            perturbations.push_back(msps_perturbation_make(MSPS_PERTURB_ROTATE, args.degrees, 0));
        } else if (op == "translate") {
            perturbations.push_back(msps_perturbation_make(MSPS_PERTURB_TRANSLATE, args.dx, args.dy));
        } else if (op == "scale") {
            perturbations.push_back(msps_perturbation_make(MSPS_PERTURB_SCALE, args.factor, 0));
        } else if (op == "squeeze") {
            perturbations.push_back(msps_perturbation_make(MSPS_PERTURB_SQUEEZE, args.fx, args.fy));
        } else {
            throw Failure{kUsage, "unknown --op '" + op + "'"};
        }
    }
    for (auto& p : perturbations) {
        p.fill = fill;
        p.interpolation = args.interpolation == "nearest" ? MSPS_INTERP_NEAREST : MSPS_INTERP_BILINEAR;
    }

    msps_report* raw = nullptr;
    check(msps_robustness_report(ref.get(), metrics.data(), metrics.size(), perturbations.data(),
                                 perturbations.size(), g.workers, &raw));
    std::unique_ptr<msps_report, void (*)(msps_report*)> report(raw, msps_report_free);

    char* text = nullptr;
    if (g.csv_out) check(msps_report_to_csv(report.get(), &text));
    else check(msps_report_to_json(report.get(), &text));
    const std::string body = take(text);

    if (!args.save_images.empty()) {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(args.save_images, ec);
        if (ec) throw Failure{kIo, "cannot create " + args.save_images + ": " + ec.message()};
        const fs::path dir(args.save_images);
        check(msps_bitmap_save_png(ref.get(), (dir / "reference.png").string().c_str()));
        for (std::size_t i = 0; i < perturbations.size(); ++i) {
            char label[128];
            msps_perturbation_label(&perturbations[i], label, sizeof label);
            msps_bitmap* out = nullptr;
            check(msps_perturb_apply(ref.get(), &perturbations[i], &out));
            BitmapPtr transformed(out);
            const std::string prefix = (i < 10 ? "0" : "") + std::to_string(i) + "-";
            const fs::path path = dir / (prefix + file_safe(label) + ".png");
            check(msps_bitmap_save_png(transformed.get(), path.string().c_str()));
        }
    }

    if (g.csv_out) {
        if (!args.out.empty()) write_file(args.out, body);
        std::cout << body;
    } else {
        json j = json::parse(body);
        if (!args.out.empty()) write_file(args.out, j.dump(2) + "\n");
        print_json(j);
    }
    return kOk;
}

// ---- filter ----------------------------------------------------------------

struct FilterArgs {
    std::string dir;
    double threshold = 0.0;
    std::string metric = "msps";
    std::string out;
    bool strict = false;
    bool no_timing = false;
};

int run_filter(const FilterArgs& args, const Globals& g) {
    g.reject_csv("filter");
    msps_filter_config config = msps_filter_config_default();
    config.metric = parse_metric(args.metric);
    config.threshold = args.threshold;
    config.align = g.align_mode();
    config.fill = g.fill_color();
    config.workers = g.workers;

    char* text = nullptr;
    check(msps_filter_directory(args.dir.c_str(), &config, args.out.empty() ? nullptr : args.out.c_str(),
                                args.no_timing ? 0 : 1, &text));
    json result = json::parse(take(text));
    for (const auto& w : result["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
    json out;
    out["summary"] = result["summary"];
    out["metric"] = args.metric;
    out["threshold"] = args.threshold;
    out["manifest"] = args.out.empty() ? json(nullptr) : json(args.out);
    out["warnings"] = result["warnings"];
    print_json(out);
    if (args.strict && out["summary"]["error"].get<std::uint64_t>() > 0) return kItemErrors;
    return kOk;
}

// ---- rank ------------------------------------------------------------------

struct RankArgs {
    std::string reference;
    std::vector<std::string> candidates;
    std::string metric = "msps";
};

int run_rank(const RankArgs& args, const Globals& g) {
    g.reject_csv("rank");
    const msps_metric metric = parse_metric(args.metric);
    const msps_color fill = g.fill_color();
    std::vector<const char*> paths;
    for (const auto& c : args.candidates) paths.push_back(c.c_str());
    char* text = nullptr;
    check(msps_rank_files(args.reference.c_str(), paths.data(), paths.size(), metric, g.align_mode(),
                          &fill, &text));
    json result = json::parse(take(text));
    for (const auto& c : result["candidates"])
        if (!c["error"].is_null())
            std::cerr << "warning: " << c["path"].get<std::string>() << ": " << c["error"].get<std::string>()
                      << '\n';
    json out;
    out["reference"] = args.reference;
    out["metric"] = result["metric"];
    out["ordering"] = result["ordering"];
    out["best"] = args.candidates[result["ordering"][0].get<std::size_t>()];
    out["candidates"] = result["candidates"];
    print_json(out);
    return kOk;
}

// ---- synth -----------------------------------------------------------------

struct SynthArgs {
    std::string template_name;
    std::uint64_t count = 1;
    std::string out;
    bool verify = false;
    std::string counter = "proxy";
};

int run_synth(const SynthArgs& args, const Globals& g) {
    g.reject_csv("synth");
    char* text = nullptr;
    check(msps_synth_dataset(args.template_name.c_str(), args.count, g.seed, args.out.c_str(), g.workers,
                             args.counter.c_str(), &text));
    json out;
    out["template"] = args.template_name;
    out["count"] = args.count;
    out["base_seed"] = g.seed;
    out["out_dir"] = args.out;
    out["stats"] = json::parse(take(text));
    int code = kOk;
    if (args.verify) {
        check(msps_synth_verify(args.template_name.c_str(), args.count, g.seed, &text));
        out["verification"] = json::parse(take(text));
        const auto& v = out["verification"];
        if (v["passed"] != v["checked"]) {
            std::cerr << "closed-loop verification failed for "
                      << v["checked"].get<std::uint64_t>() - v["passed"].get<std::uint64_t>() << " item(s)\n";
            code = kValidation;
        }
    } else {
        out["verification"] = nullptr;
    }
    print_json(out);
    return code;
}

// ---- stats -----------------------------------------------------------------

struct StatsArgs {
    std::string manifest;
    std::string counter = "proxy";
};

int run_stats(const StatsArgs& args, const Globals& g) {
    g.reject_csv("stats");
    char* text = nullptr;
    check(msps_dataset_stats(args.manifest.c_str(), args.counter.c_str(), &text));
    json out = json::parse(take(text));
    if (out["skipped_lines"].get<std::uint64_t>() > 0)
        std::cerr << "warning: skipped " << out["skipped_lines"].get<std::uint64_t>() << " manifest line(s)\n";
    print_json(out);
    return kOk;
}

// Decoded images run to tens of megabytes. glibc's defaults hand each freed
// buffer back to the kernel, so every following image page-faults its memory
// in again; keep freed blocks for reuse instead.
void keep_freed_image_buffers() {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 1 << 30);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
#endif
}

}  // namespace

int main(int argc, char** argv) {
    keep_freed_image_buffers();
    CLI::App app{"Multi-scale pixel similarity toolkit: image comparison, robustness reports, "
                 "dataset filtering, best-of-N ranking and synthetic datasets.",
                 "msps"};
    app.set_version_flag("--version", msps_version());
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    auto* json_flag = app.add_flag("--json", g.json_out, "JSON output (default)");
    app.add_flag("--csv", g.csv_out, "CSV output (perturb only)")->excludes(json_flag);
    app.add_option("--seed", g.seed, "Base seed for synth")->capture_default_str();
    app.add_option("--workers", g.workers, "Worker threads")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_option("--align", g.align, "Size alignment: strict or pad")
        ->check(CLI::IsMember({"strict", "pad"}))
        ->capture_default_str();
    app.add_option("--fill", g.fill, "Fill color for padding and exposed background (#rrggbb)")
        ->capture_default_str();

    CompareArgs compare;
    auto* c = app.add_subcommand("compare", "Score a candidate PNG against a reference PNG");
    c->add_option("reference", compare.reference, "Reference PNG")->required();
    c->add_option("candidate", compare.candidate, "Candidate PNG")->required();
    c->add_option("--metrics", compare.metrics, "Metrics: msps, pixel_similarity, mse")
        ->delimiter(',')
        ->capture_default_str();

    PerturbArgs perturb;
    auto* p = app.add_subcommand("perturb", "Robustness report: metric losses under geometric transforms");
    p->add_option("reference", perturb.reference, "Reference PNG (default: bundled structured test image)");
    p->add_option("--size", perturb.size, "Side of the bundled test image")
        ->check(CLI::Range(1u, 16384u))
        ->capture_default_str();
    p->add_option("--op", perturb.ops, "suite, identity, rotate, translate, scale or squeeze (repeatable)")
        ->check(CLI::IsMember({"suite", "identity", "rotate", "translate", "scale", "squeeze"}))
        ->capture_default_str();
    p->add_option("--degrees", perturb.degrees, "Rotation angle")->capture_default_str();
    p->add_option("--dx", perturb.dx, "Translation along x (pixels)")->capture_default_str();
    p->add_option("--dy", perturb.dy, "Translation along y (pixels)")->capture_default_str();
    p->add_option("--factor", perturb.factor, "Uniform scale factor")->capture_default_str();
    p->add_option("--fx", perturb.fx, "Squeeze factor along x")->capture_default_str();
    p->add_option("--fy", perturb.fy, "Squeeze factor along y")->capture_default_str();
    p->add_option("--interp", perturb.interpolation, "bilinear or nearest")
        ->check(CLI::IsMember({"bilinear", "nearest"}))
        ->capture_default_str();
    p->add_option("--metrics", perturb.metrics, "Metrics to report")->delimiter(',')->capture_default_str();
    p->add_option("--out", perturb.out, "Also write the report to this file");
    p->add_option("--save-images", perturb.save_images, "Write the reference and transformed images here");

    FilterArgs filter;
    filter.threshold = msps_filter_config_default().threshold;
    auto* f = app.add_subcommand("filter", "Score <id>.ref.png / <id>.cand.png pairs and write a manifest");
    f->add_option("dir", filter.dir, "Dataset root")->required();
    f->add_option("--threshold", filter.threshold, "Pass when score >= threshold")->capture_default_str();
    f->add_option("--metric", filter.metric, "Filtering metric")->capture_default_str();
    f->add_option("--out", filter.out, "Manifest path (JSONL); omitted: no manifest is written");
    f->add_flag("--strict", filter.strict, "Exit 1 when any pair failed to score");
    f->add_flag("--no-timing", filter.no_timing, "Omit wall_time_s from the manifest");

    RankArgs rank;
    auto* r = app.add_subcommand("rank", "Order candidate PNGs by similarity to a reference");
    r->add_option("reference", rank.reference, "Reference PNG")->required();
    r->add_option("candidates", rank.candidates, "Candidate PNGs")->required();
    r->add_option("--metric", rank.metric, "Ranking metric")->capture_default_str();

    SynthArgs synth;
    auto* s = app.add_subcommand("synth", "Generate a synthetic markup/SVG dataset");
    s->add_option("template", synth.template_name,
                  "color, color_responsive, size, color_text, color_text_size or combined")
        ->required();
    s->add_option("--count", synth.count, "Number of items")->check(CLI::PositiveNumber)->capture_default_str();
    s->add_option("--out", synth.out, "Output directory")->required();
    s->add_flag("--verify", synth.verify, "Run the closed-loop raster check on the generated items");
    s->add_option("--counter", synth.counter, "Token counter: proxy or whitespace")
        ->check(CLI::IsMember({"proxy", "whitespace"}))
        ->capture_default_str();

    StatsArgs stats;
    auto* st = app.add_subcommand("stats", "Token statistics of a dataset manifest");
    st->add_option("manifest", stats.manifest, "manifest.jsonl")->required();
    st->add_option("--counter", stats.counter, "Token counter: proxy or whitespace")
        ->check(CLI::IsMember({"proxy", "whitespace"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c->parsed()) return run_compare(compare, g);
        if (p->parsed()) return run_perturb(perturb, g);
        if (f->parsed()) return run_filter(filter, g);
        if (r->parsed()) return run_rank(rank, g);
        if (s->parsed()) return run_synth(synth, g);
        if (st->parsed()) return run_stats(stats, g);
    } catch (const Failure& failure) {
        std::cerr << "msps: " << failure.message << '\n';
        return failure.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "msps: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}
