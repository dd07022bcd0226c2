// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/msps.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "msps/bitmap.hpp"
#include "msps/correlation.hpp"
#include "msps/error.hpp"
#include "msps/metrics.hpp"
#include "msps/perturb.hpp"
#include "msps/pipeline.hpp"
#include "msps/png_io.hpp"
#include "msps/scene.hpp"
#include "msps/synthgen.hpp"
#include "msps/version.hpp"

struct msps_bitmap {
    msps::Bitmap bitmap;
};

struct msps_report {
    msps::RobustnessReport report;
};

namespace {

thread_local std::string g_last_error;

msps_status to_status(msps::ErrorCode code) {
    using msps::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return MSPS_ERR_INVALID_ARGUMENT;
        case ErrorCode::FileNotFound: return MSPS_ERR_FILE_NOT_FOUND;
        case ErrorCode::Io: return MSPS_ERR_IO;
        case ErrorCode::MalformedPng: return MSPS_ERR_MALFORMED_PNG;
        case ErrorCode::UnsupportedPng: return MSPS_ERR_UNSUPPORTED_PNG;
        case ErrorCode::DimensionMismatch: return MSPS_ERR_DIMENSION_MISMATCH;
        case ErrorCode::ChannelMismatch: return MSPS_ERR_CHANNEL_MISMATCH;
        case ErrorCode::UnsupportedSvg: return MSPS_ERR_UNSUPPORTED_SVG;
        case ErrorCode::MalformedSvg: return MSPS_ERR_MALFORMED_SVG;
        case ErrorCode::UnknownTemplate: return MSPS_ERR_UNKNOWN_TEMPLATE;
        case ErrorCode::Parse: return MSPS_ERR_PARSE;
    }
    return MSPS_ERR_INTERNAL;
}

msps_status fail(msps_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
msps_status guarded(Fn&& fn) {
    g_last_error.clear();
    try {
        fn();
        return MSPS_OK;
    } catch (const msps::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(MSPS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(MSPS_ERR_INTERNAL, e.what());
    }
}

void require(bool condition, const char* what) {
    if (!condition) throw msps::Error(msps::ErrorCode::InvalidArgument, what);
}

msps::MetricId to_metric(msps_metric m) {
    switch (m) {
        case MSPS_METRIC_MSPS: return msps::MetricId::Msps;
        case MSPS_METRIC_PIXEL_SIMILARITY: return msps::MetricId::PixelSimilarity;
        case MSPS_METRIC_MSE: return msps::MetricId::Mse;
    }
    throw msps::Error(msps::ErrorCode::InvalidArgument, "unknown metric id");
}

msps::AlignMode to_align(msps_align_mode m) {
    switch (m) {
        case MSPS_ALIGN_STRICT: return msps::AlignMode::Strict;
        case MSPS_ALIGN_PAD_TO_MAX: return msps::AlignMode::PadToMax;
    }
    throw msps::Error(msps::ErrorCode::InvalidArgument, "unknown align mode");
}

msps::Color to_color(const msps_color* c) {
    if (!c) return msps::Color::white();
    return {c->r, c->g, c->b};
}

msps::Perturbation to_perturbation(const msps_perturbation& p) {
    msps::Perturbation out;
    switch (p.kind) {
        case MSPS_PERTURB_IDENTITY: out.kind = msps::PerturbKind::Identity; break;
        case MSPS_PERTURB_ROTATE: out.kind = msps::PerturbKind::Rotate; break;
        case MSPS_PERTURB_TRANSLATE: out.kind = msps::PerturbKind::Translate; break;
        case MSPS_PERTURB_SCALE: out.kind = msps::PerturbKind::Scale; break;
        case MSPS_PERTURB_SQUEEZE: out.kind = msps::PerturbKind::Squeeze; break;
        default: throw msps::Error(msps::ErrorCode::InvalidArgument, "unknown perturbation kind");
    }
    out.a = p.a;
    out.b = p.b;
    out.fill = {p.fill.r, p.fill.g, p.fill.b};
    out.interpolation = p.interpolation == MSPS_INTERP_NEAREST ? msps::Interpolation::Nearest
                                                               : msps::Interpolation::Bilinear;
    return out;
}

msps_perturbation from_perturbation(const msps::Perturbation& p) {
    msps_perturbation out{};
    out.kind = static_cast<msps_perturb_kind>(p.kind);
    out.a = p.a;
    out.b = p.b;
    out.fill = {p.fill.r, p.fill.g, p.fill.b};
    out.interpolation = p.interpolation == msps::Interpolation::Nearest ? MSPS_INTERP_NEAREST
                                                                        : MSPS_INTERP_BILINEAR;
    return out;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

msps_bitmap* wrap(msps::Bitmap b) { return new msps_bitmap{std::move(b)}; }

}  // namespace

extern "C" {

const char* msps_version(void) { return MSPS_VERSION_STRING; }

const char* msps_last_error(void) { return g_last_error.c_str(); }

const char* msps_status_name(msps_status status) {
    switch (status) {
        case MSPS_OK: return "ok";
        case MSPS_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case MSPS_ERR_FILE_NOT_FOUND: return "file_not_found";
        case MSPS_ERR_IO: return "io";
        case MSPS_ERR_MALFORMED_PNG: return "malformed_png";
        case MSPS_ERR_UNSUPPORTED_PNG: return "unsupported_png";
        case MSPS_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
        case MSPS_ERR_CHANNEL_MISMATCH: return "channel_mismatch";
        case MSPS_ERR_UNSUPPORTED_SVG: return "unsupported_svg";
        case MSPS_ERR_MALFORMED_SVG: return "malformed_svg";
        case MSPS_ERR_UNKNOWN_TEMPLATE: return "unknown_template";
        case MSPS_ERR_PARSE: return "parse";
        case MSPS_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void msps_string_free(char* s) { std::free(s); }

msps_filter_config msps_filter_config_default(void) {
    msps_filter_config c{};
    c.metric = MSPS_METRIC_MSPS;
    c.threshold = msps::FilterConfig{}.threshold;
    c.align = MSPS_ALIGN_STRICT;
    c.fill = {1.0, 1.0, 1.0};
    c.workers = 1;
    return c;
}

msps_status msps_metric_from_name(const char* name, msps_metric* out) {
    return guarded([&] {
        require(name && out, "null argument");
        const auto id = msps::parse_metric(name);
        if (!id) throw msps::Error(msps::ErrorCode::InvalidArgument, std::string("unknown metric '") + name + "'");
        *out = static_cast<msps_metric>(*id);
    });
}

const char* msps_metric_name(msps_metric metric) {
    switch (metric) {
        case MSPS_METRIC_MSPS: return "msps";
        case MSPS_METRIC_PIXEL_SIMILARITY: return "pixel_similarity";
        case MSPS_METRIC_MSE: return "mse";
    }
    return "unknown";
}

msps_status msps_color_from_hex(const char* hex, msps_color* out) {
    return guarded([&] {
        require(hex && out, "null argument");
        std::string text(hex);
        if (!text.empty() && text[0] != '#') text = "#" + text;
        const auto c = msps::Rgb8::parse_hex(text);
        if (!c) throw msps::Error(msps::ErrorCode::InvalidArgument, "expected a #rrggbb color, got '" + std::string(hex) + "'");
        const msps::Color color = c->to_color();
        *out = {color.r, color.g, color.b};
    });
}

msps_status msps_bitmap_create(uint32_t width, uint32_t height, uint32_t channels,
                               const double* values, msps_bitmap** out) {
    return guarded([&] {
        require(values && out, "null argument");
        require(width > 0 && height > 0, "bitmap dimensions must be >= 1");
        const std::size_t n = static_cast<std::size_t>(width) * height * channels;
        *out = wrap(msps::Bitmap(width, height, channels, std::vector<double>(values, values + n)));
    });
}

msps_status msps_bitmap_load_png(const char* path, const msps_color* background, msps_bitmap** out) {
    return guarded([&] {
        require(path && out, "null argument");
        *out = wrap(msps::load_png(path, to_color(background)));
    });
}

msps_status msps_bitmap_save_png(const msps_bitmap* bitmap, const char* path) {
    return guarded([&] {
        require(bitmap && path, "null argument");
        msps::save_png(bitmap->bitmap, path);
    });
}

void msps_bitmap_free(msps_bitmap* bitmap) { delete bitmap; }

uint32_t msps_bitmap_width(const msps_bitmap* b) { return b ? b->bitmap.width() : 0; }
uint32_t msps_bitmap_height(const msps_bitmap* b) { return b ? b->bitmap.height() : 0; }
uint32_t msps_bitmap_channels(const msps_bitmap* b) { return b ? b->bitmap.channels() : 0; }
const double* msps_bitmap_values(const msps_bitmap* b) { return b ? b->bitmap.values().data() : nullptr; }

msps_status msps_bitmap_pool2x(const msps_bitmap* bitmap, msps_bitmap** out) {
    return guarded([&] {
        require(bitmap && out, "null argument");
        *out = wrap(msps::average_pool_2x(bitmap->bitmap));
    });
}

msps_status msps_bitmap_grayscale(const msps_bitmap* bitmap, msps_bitmap** out) {
    return guarded([&] {
        require(bitmap && out, "null argument");
        *out = wrap(msps::to_grayscale(bitmap->bitmap));
    });
}

msps_status msps_align_pair(const msps_bitmap* a, const msps_bitmap* b, msps_align_mode mode,
                            const msps_color* fill, msps_bitmap** out_a, msps_bitmap** out_b) {
    return guarded([&] {
        require(a && b && out_a && out_b, "null argument");
        auto [x, y] = msps::align_pair(a->bitmap, b->bitmap, to_align(mode), to_color(fill));
        auto first = std::make_unique<msps_bitmap>(msps_bitmap{std::move(x)});
        *out_b = wrap(std::move(y));
        *out_a = first.release();
    });
}

size_t msps_level_count(uint32_t width, uint32_t height) {
    if (width == 0 || height == 0) return 0;
    return msps::level_count(width, height);
}

msps_status msps_score(const msps_bitmap* a, const msps_bitmap* b, msps_metric metric,
                       double* value, double* wall_time_s) {
    return guarded([&] {
        require(a && b && value, "null argument");
        const auto start = std::chrono::steady_clock::now();
        *value = msps::score(to_metric(metric), a->bitmap, b->bitmap);
        if (wall_time_s)
            *wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    });
}

msps_status msps_pearson(const double* x, const double* y, size_t n, msps_correlation* out) {
    return guarded([&] {
        require(x && y && out, "null argument");
        const auto r = msps::pearson({x, n}, {y, n});
        *out = {r.r, r.p_value, r.n, r.underflow ? 1 : 0};
    });
}

msps_perturbation msps_perturbation_make(msps_perturb_kind kind, double a, double b) {
    msps_perturbation p{};
    p.kind = kind;
    p.a = a;
    p.b = b;
    p.fill = {1.0, 1.0, 1.0};
    p.interpolation = MSPS_INTERP_BILINEAR;
    return p;
}

msps_status msps_perturb_apply(const msps_bitmap* bitmap, const msps_perturbation* p, msps_bitmap** out) {
    return guarded([&] {
        require(bitmap && p && out, "null argument");
        *out = wrap(msps::apply(bitmap->bitmap, to_perturbation(*p)));
    });
}

msps_status msps_default_perturbations(uint32_t width, uint32_t height, msps_perturbation* out,
                                       size_t capacity, size_t* count) {
    return guarded([&] {
        require(count && (out || capacity == 0), "null argument");
        const auto suite = msps::default_perturbations(width, height);
        for (std::size_t i = 0; i < suite.size() && i < capacity; ++i) out[i] = from_perturbation(suite[i]);
        *count = suite.size();
    });
}

void msps_perturbation_label(const msps_perturbation* p, char* buf, size_t size) {
    if (!buf || size == 0) return;
    buf[0] = '\0';
    if (!p) return;
    try {
        const std::string label = to_perturbation(*p).label();
        const std::size_t n = std::min(label.size(), size - 1);
        std::memcpy(buf, label.data(), n);
        buf[n] = '\0';
    } catch (...) {
    }
}

msps_status msps_structured_test_image(uint32_t width, uint32_t height, msps_bitmap** out) {
    return guarded([&] {
        require(out, "null argument");
        *out = wrap(msps::structured_test_image(width, height));
    });
}

msps_status msps_robustness_report(const msps_bitmap* reference, const msps_metric* metrics,
                                   size_t metric_count, const msps_perturbation* perturbations,
                                   size_t perturbation_count, unsigned workers, msps_report** out) {
    return guarded([&] {
        require(reference && metrics && perturbations && out, "null argument");
        std::vector<msps::MetricId> ids;
        for (std::size_t i = 0; i < metric_count; ++i) ids.push_back(to_metric(metrics[i]));
        std::vector<msps::Perturbation> ps;
        for (std::size_t i = 0; i < perturbation_count; ++i) ps.push_back(to_perturbation(perturbations[i]));
        *out = new msps_report{msps::robustness_report(reference->bitmap, ids, ps, workers)};
    });
}

size_t msps_report_rows(const msps_report* r) { return r ? r->report.metrics.size() : 0; }
size_t msps_report_columns(const msps_report* r) { return r ? r->report.perturbations.size() : 0; }

msps_status msps_report_cell(const msps_report* report, size_t row, size_t column, double* loss,
                             double* wall_time_s) {
    return guarded([&] {
        require(report && loss, "null argument");
        require(row < report->report.metrics.size() && column < report->report.perturbations.size(),
                "cell index out of range");
        const auto& cell = report->report.cell(row, column);
        *loss = cell.loss;
        if (wall_time_s) *wall_time_s = cell.wall_time_s;
    });
}

msps_status msps_report_to_csv(const msps_report* report, char** out) {
    return guarded([&] {
        require(report && out, "null argument");
        *out = dup_string(report->report.to_csv());
    });
}

msps_status msps_report_to_json(const msps_report* report, char** out) {
    return guarded([&] {
        require(report && out, "null argument");
        *out = dup_string(report->report.to_json());
    });
}

void msps_report_free(msps_report* report) { delete report; }

msps_status msps_filter_directory(const char* root, const msps_filter_config* config,
                                  const char* manifest_path, int include_timing, char** summary_json) {
    return guarded([&] {
        require(root && config && summary_json, "null argument");
        msps::FilterConfig cfg;
        cfg.metric = to_metric(config->metric);
        cfg.threshold = config->threshold;
        cfg.align = to_align(config->align);
        cfg.fill = to_color(&config->fill);
        cfg.workers = config->workers;
        cfg.validate();

        const auto scan = msps::scan_pairs(root);
        const auto result = msps::filter_dataset(scan.pairs, cfg);
        if (manifest_path) {
            const std::string text = msps::manifest_jsonl(result.entries, include_timing != 0);
            std::FILE* f = std::fopen(manifest_path, "wb");
            if (!f) throw msps::Error(msps::ErrorCode::Io, std::string("cannot write ") + manifest_path);
            const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
            if (std::fclose(f) != 0 || !ok)
                throw msps::Error(msps::ErrorCode::Io, std::string("write failed: ") + manifest_path);
        }
        nlohmann::ordered_json j;
        j["summary"] = nlohmann::ordered_json::parse(result.summary.to_json());
        j["warnings"] = scan.warnings;
        *summary_json = dup_string(j.dump());
    });
}

msps_status msps_rank_files(const char* reference_path, const char* const* candidate_paths,
                            size_t candidate_count, msps_metric metric, msps_align_mode align,
                            const msps_color* fill, char** result_json) {
    return guarded([&] {
        require(reference_path && result_json && (candidate_paths || candidate_count == 0), "null argument");
        require(candidate_count > 0, "rank needs at least one candidate");
        const msps::MetricId id = to_metric(metric);
        const msps::Bitmap reference = msps::load_png(reference_path);

        // Candidates that fail to load are ranked as failures; the rest go
        // through rank_best_of_n so ordering rules live in one place.
        std::vector<msps::Bitmap> loaded;
        std::vector<std::size_t> loaded_index;
        std::vector<std::optional<std::string>> load_errors(candidate_count);
        for (std::size_t i = 0; i < candidate_count; ++i) {
            try {
                loaded.push_back(msps::load_png(candidate_paths[i]));
                loaded_index.push_back(i);
            } catch (const msps::Error& e) {
                load_errors[i] = std::string(msps::error_code_name(e.code())) + ": " + e.what();
            }
        }
        std::vector<double> scores(candidate_count, -std::numeric_limits<double>::infinity());
        std::vector<std::optional<std::string>> errors = load_errors;
        if (!loaded.empty()) {
            const auto ranked = msps::rank_best_of_n(reference, loaded, id, to_align(align), to_color(fill));
            for (std::size_t k = 0; k < loaded.size(); ++k) {
                scores[loaded_index[k]] = ranked.scores[k];
                errors[loaded_index[k]] = ranked.errors[k];
            }
        }
        std::vector<std::size_t> ordering(candidate_count);
        for (std::size_t i = 0; i < candidate_count; ++i) ordering[i] = i;
        std::stable_sort(ordering.begin(), ordering.end(),
                         [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

        nlohmann::ordered_json j;
        j["metric"] = msps::metric_name(id);
        j["ordering"] = ordering;
        nlohmann::ordered_json cands = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < candidate_count; ++i) {
            nlohmann::ordered_json c;
            c["index"] = i;
            c["path"] = candidate_paths[i];
            if (errors[i]) {
                c["score"] = nullptr;
                c["error"] = *errors[i];
            } else {
                // Report the metric's own value; ranking uses the
                // higher-is-better orientation internally.
                c["score"] = msps::is_similarity(id) ? scores[i] : -scores[i];
                c["error"] = nullptr;
            }
            cands.push_back(std::move(c));
        }
        j["candidates"] = std::move(cands);
        *result_json = dup_string(j.dump());
    });
}

msps_status msps_rank(const msps_bitmap* reference, const msps_bitmap* const* candidates,
                      size_t candidate_count, msps_metric metric, msps_align_mode align,
                      const msps_color* fill, size_t* ordering, double* scores) {
    return guarded([&] {
        require(reference && candidates && ordering, "null argument");
        std::vector<msps::Bitmap> cands;
        cands.reserve(candidate_count);
        for (std::size_t i = 0; i < candidate_count; ++i) {
            require(candidates[i] != nullptr, "null candidate");
            cands.push_back(candidates[i]->bitmap);
        }
        const auto ranked =
            msps::rank_best_of_n(reference->bitmap, cands, to_metric(metric), to_align(align), to_color(fill));
        for (std::size_t i = 0; i < candidate_count; ++i) {
            ordering[i] = ranked.ordering[i];
            if (scores) scores[i] = ranked.scores[i];
        }
    });
}

msps_status msps_dataset_stats(const char* manifest_path, const char* counter, char** stats_json) {
    return guarded([&] {
        require(manifest_path && stats_json, "null argument");
        const auto stats = msps::dataset_stats(manifest_path, msps::token_counter(counter ? counter : ""));
        *stats_json = dup_string(stats.to_json());
    });
}

msps_status msps_synth_generate(const char* template_name, uint64_t seed, char** item_json) {
    return guarded([&] {
        require(template_name && item_json, "null argument");
        const auto item = msps::generate(msps::parse_template(template_name), seed);
        nlohmann::ordered_json j;
        j["item_id"] = item.item_id;
        j["template"] = msps::template_name(item.template_id);
        j["seed"] = item.seed;
        nlohmann::ordered_json vars = nlohmann::ordered_json::object();
        for (const auto& [k, v] : item.variables) vars[k] = v;
        j["variables"] = std::move(vars);
        j["markup"] = item.markup;
        j["svg"] = item.svg;
        j["mobile_svg"] = item.mobile_svg ? nlohmann::ordered_json(*item.mobile_svg) : nlohmann::ordered_json(nullptr);
        j["has_scene"] = item.scene.has_value();
        *item_json = dup_string(j.dump());
    });
}

msps_status msps_synth_dataset(const char* template_name, uint64_t count, uint64_t base_seed,
                               const char* out_dir, unsigned workers, const char* counter,
                               char** stats_json) {
    return guarded([&] {
        require(template_name && out_dir && stats_json, "null argument");
        const auto t = msps::parse_template(template_name);
        const auto stats = msps::generate_dataset(t, count, base_seed, out_dir,
                                                  msps::token_counter(counter ? counter : ""), workers);
        *stats_json = dup_string(stats.to_json());
    });
}

msps_status msps_synth_verify(const char* template_name, uint64_t count, uint64_t base_seed,
                              char** report_json) {
    return guarded([&] {
        require(template_name && report_json, "null argument");
        const auto report = msps::verify_closed_loop(msps::parse_template(template_name), count, base_seed);
        nlohmann::ordered_json j;
        j["checked"] = report.checked;
        j["passed"] = report.passed;
        j["pixel_checked"] = report.pixel_checked;
        j["min_msps"] = report.min_msps;
        j["failures"] = report.failures;
        *report_json = dup_string(j.dump());
    });
}

msps_status msps_svg_rasterize(const char* svg, msps_bitmap** out) {
    return guarded([&] {
        require(svg && out, "null argument");
        *out = wrap(msps::rasterize_svg_subset(svg));
    });
}

}  // extern "C"
