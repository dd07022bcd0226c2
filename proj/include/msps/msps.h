/* Copyright 2026 The msps Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the msps image-similarity toolkit.
 *
 * Conventions:
 *  - Every fallible call returns msps_status; MSPS_OK is 0. On failure a
 *    description is available from msps_last_error() on the same thread
 *    until the next call into the library.
 *  - Objects are opaque handles released with their *_free function;
 *    passing NULL to any *_free is a no-op.
 *  - Strings returned through char** are NUL-terminated UTF-8 owned by the
 *    caller and must be released with msps_string_free().
 *  - Composite results (reports, manifests, statistics) are returned as JSON
 *    documents with the same keys the command-line tool prints.
 */
#ifndef MSPS_MSPS_H
#define MSPS_MSPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MSPS_BUILDING_LIBRARY)
#    define MSPS_API __declspec(dllexport)
#  else
#    define MSPS_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define MSPS_API __attribute__((visibility("default")))
#else
#  define MSPS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum msps_status {
    MSPS_OK = 0,
    MSPS_ERR_INVALID_ARGUMENT = 1,
    MSPS_ERR_FILE_NOT_FOUND = 2,
    MSPS_ERR_IO = 3,
    MSPS_ERR_MALFORMED_PNG = 4,
    MSPS_ERR_UNSUPPORTED_PNG = 5,
    MSPS_ERR_DIMENSION_MISMATCH = 6,
    MSPS_ERR_CHANNEL_MISMATCH = 7,
    MSPS_ERR_UNSUPPORTED_SVG = 8,
    MSPS_ERR_MALFORMED_SVG = 9,
    MSPS_ERR_UNKNOWN_TEMPLATE = 10,
    MSPS_ERR_PARSE = 11,
    MSPS_ERR_INTERNAL = 99
} msps_status;

typedef enum msps_metric {
    MSPS_METRIC_MSPS = 0,
    MSPS_METRIC_PIXEL_SIMILARITY = 1,
    MSPS_METRIC_MSE = 2
} msps_metric;

typedef enum msps_align_mode {
    MSPS_ALIGN_STRICT = 0,
    MSPS_ALIGN_PAD_TO_MAX = 1
} msps_align_mode;

typedef enum msps_perturb_kind {
    MSPS_PERTURB_IDENTITY = 0,
    MSPS_PERTURB_ROTATE = 1,    /* a = degrees */
    MSPS_PERTURB_TRANSLATE = 2, /* a = dx, b = dy (pixels) */
    MSPS_PERTURB_SCALE = 3,     /* a = factor */
    MSPS_PERTURB_SQUEEZE = 4    /* a = x factor, b = y factor */
} msps_perturb_kind;

typedef enum msps_interpolation {
    MSPS_INTERP_BILINEAR = 0,
    MSPS_INTERP_NEAREST = 1
} msps_interpolation;

typedef struct msps_color {
    double r, g, b; /* each in [0, 1] */
} msps_color;

typedef struct msps_perturbation {
    msps_perturb_kind kind;
    double a;
    double b;
    msps_color fill;
    msps_interpolation interpolation;
} msps_perturbation;

typedef struct msps_correlation {
    double r;
    double p_value;
    size_t n;
    int underflow; /* nonzero when p_value was below the double range */
} msps_correlation;

typedef struct msps_filter_config {
    msps_metric metric;
    double threshold;
    msps_align_mode align;
    msps_color fill;
    unsigned workers;
} msps_filter_config;

typedef struct msps_bitmap msps_bitmap;
typedef struct msps_report msps_report;

/* ---- library ---------------------------------------------------------- */

MSPS_API const char* msps_version(void);
MSPS_API const char* msps_last_error(void);
MSPS_API const char* msps_status_name(msps_status status);
MSPS_API void msps_string_free(char* s);

/* Defaults: metric msps, threshold 0.98, strict alignment, white fill, 1 worker. */
MSPS_API msps_filter_config msps_filter_config_default(void);

MSPS_API msps_status msps_metric_from_name(const char* name, msps_metric* out);
MSPS_API const char* msps_metric_name(msps_metric metric);

/* Parses "#rrggbb" or "rrggbb". */
MSPS_API msps_status msps_color_from_hex(const char* hex, msps_color* out);

/* ---- bitmaps ---------------------------------------------------------- */

/* `values` holds width*height*channels doubles in [0, 1], row-major. */
MSPS_API msps_status msps_bitmap_create(uint32_t width, uint32_t height, uint32_t channels,
                                        const double* values, msps_bitmap** out);
/* Alpha is composited over `background` (NULL means white). */
MSPS_API msps_status msps_bitmap_load_png(const char* path, const msps_color* background,
                                          msps_bitmap** out);
MSPS_API msps_status msps_bitmap_save_png(const msps_bitmap* bitmap, const char* path);
MSPS_API void msps_bitmap_free(msps_bitmap* bitmap);

MSPS_API uint32_t msps_bitmap_width(const msps_bitmap* bitmap);
MSPS_API uint32_t msps_bitmap_height(const msps_bitmap* bitmap);
MSPS_API uint32_t msps_bitmap_channels(const msps_bitmap* bitmap);
/* Borrowed view, valid while the bitmap lives. */
MSPS_API const double* msps_bitmap_values(const msps_bitmap* bitmap);

MSPS_API msps_status msps_bitmap_pool2x(const msps_bitmap* bitmap, msps_bitmap** out);
MSPS_API msps_status msps_bitmap_grayscale(const msps_bitmap* bitmap, msps_bitmap** out);
MSPS_API msps_status msps_align_pair(const msps_bitmap* a, const msps_bitmap* b,
                                     msps_align_mode mode, const msps_color* fill,
                                     msps_bitmap** out_a, msps_bitmap** out_b);

/* ---- metrics ---------------------------------------------------------- */

MSPS_API size_t msps_level_count(uint32_t width, uint32_t height);
MSPS_API msps_status msps_score(const msps_bitmap* a, const msps_bitmap* b, msps_metric metric,
                                double* value, double* wall_time_s);
MSPS_API msps_status msps_pearson(const double* x, const double* y, size_t n,
                                  msps_correlation* out);

/* ---- perturbations ---------------------------------------------------- */

MSPS_API msps_perturbation msps_perturbation_make(msps_perturb_kind kind, double a, double b);
MSPS_API msps_status msps_perturb_apply(const msps_bitmap* bitmap, const msps_perturbation* p,
                                        msps_bitmap** out);
/* Writes up to `capacity` entries; *count receives the full suite size (5). */
MSPS_API msps_status msps_default_perturbations(uint32_t width, uint32_t height,
                                                msps_perturbation* out, size_t capacity,
                                                size_t* count);
/* Writes a label such as "rotate(5)" (truncated to fit, always terminated). */
MSPS_API void msps_perturbation_label(const msps_perturbation* p, char* buf, size_t size);
MSPS_API msps_status msps_structured_test_image(uint32_t width, uint32_t height,
                                                msps_bitmap** out);

MSPS_API msps_status msps_robustness_report(const msps_bitmap* reference,
                                            const msps_metric* metrics, size_t metric_count,
                                            const msps_perturbation* perturbations,
                                            size_t perturbation_count, unsigned workers,
                                            msps_report** out);
MSPS_API size_t msps_report_rows(const msps_report* report);
MSPS_API size_t msps_report_columns(const msps_report* report);
MSPS_API msps_status msps_report_cell(const msps_report* report, size_t row, size_t column,
                                      double* loss, double* wall_time_s);
/* Columns: metric, perturbation, loss, wall_time_s. */
MSPS_API msps_status msps_report_to_csv(const msps_report* report, char** out);
MSPS_API msps_status msps_report_to_json(const msps_report* report, char** out);
MSPS_API void msps_report_free(msps_report* report);

/* ---- dataset pipeline ------------------------------------------------- */

/* Scans `root` for <id>.ref.png / <id>.cand.png pairs, filters them and
 * writes the JSONL manifest to `manifest_path` (skipped when NULL).
 * `include_timing` controls the wall_time_s field. *summary_json receives
 * {"summary": {...}, "warnings": [...]}. Per-pair failures are data and do
 * not make the call fail. */
MSPS_API msps_status msps_filter_directory(const char* root, const msps_filter_config* config,
                                           const char* manifest_path, int include_timing,
                                           char** summary_json);

/* Best-of-N over PNG files. Unloadable or incompatible candidates rank last
 * with an "error" entry. *result_json: {"ordering": [...], "candidates": [...]}. */
MSPS_API msps_status msps_rank_files(const char* reference_path, const char* const* candidate_paths,
                                     size_t candidate_count, msps_metric metric,
                                     msps_align_mode align, const msps_color* fill,
                                     char** result_json);
/* Same over in-memory bitmaps; `ordering` receives candidate_count indices. */
MSPS_API msps_status msps_rank(const msps_bitmap* reference, const msps_bitmap* const* candidates,
                               size_t candidate_count, msps_metric metric, msps_align_mode align,
                               const msps_color* fill, size_t* ordering, double* scores);

/* `counter` is "proxy" (NULL means proxy) or "whitespace". */
MSPS_API msps_status msps_dataset_stats(const char* manifest_path, const char* counter,
                                        char** stats_json);

/* ---- synthetic datasets ----------------------------------------------- */

/* *item_json: {"item_id", "template", "seed", "variables", "markup", "svg",
 * "mobile_svg" (or null), "has_scene"}. */
MSPS_API msps_status msps_synth_generate(const char* template_name, uint64_t seed,
                                         char** item_json);
MSPS_API msps_status msps_synth_dataset(const char* template_name, uint64_t count,
                                        uint64_t base_seed, const char* out_dir,
                                        unsigned workers, const char* counter,
                                        char** stats_json);
/* Rasterizes each scene-bearing item's SVG and its scene, and checks text
 * content for text-bearing items. *report_json: {"checked", "passed",
 * "pixel_checked", "min_msps", "failures": [item ids]}. */
MSPS_API msps_status msps_synth_verify(const char* template_name, uint64_t count,
                                       uint64_t base_seed, char** report_json);
MSPS_API msps_status msps_svg_rasterize(const char* svg, msps_bitmap** out);

#ifdef __cplusplus
}
#endif

#endif /* MSPS_MSPS_H */
