// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_PIPELINE_HPP
#define MSPS_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msps/bitmap.hpp"
#include "msps/metrics.hpp"
#include "msps/tokens.hpp"

namespace msps {

struct PairingRule {
    std::string reference_suffix = ".ref.png";
    std::string candidate_suffix = ".cand.png";
};

struct ImagePair {
    std::string pair_id;
    std::filesystem::path reference_path;
    std::filesystem::path candidate_path;

    friend bool operator==(const ImagePair&, const ImagePair&) = default;
};

struct ScanResult {
    std::vector<ImagePair> pairs;       // sorted by pair_id
    std::vector<std::string> warnings;  // unpaired files, sorted
};

// Walks `root` recursively. A pair id is the path relative to root with the
// suffix removed, using '/' separators. Throws Io if root is unreadable.
ScanResult scan_pairs(const std::filesystem::path& root, const PairingRule& rule = {});

enum class Verdict { Pass, Fail, Error };
std::string_view verdict_name(Verdict v) noexcept;

struct FilterConfig {
    MetricId metric = MetricId::Msps;
    double threshold = 0.98;
    AlignMode align = AlignMode::Strict;
    Color fill = Color::white();
    unsigned workers = 1;
    // Reported alongside the filter metric; never affects the verdict.
    std::vector<MetricId> extra_metrics;

    void validate() const;
};

struct ManifestEntry {
    std::string pair_id;
    std::string reference_path;
    std::string candidate_path;
    std::vector<std::pair<MetricId, double>> scores;
    Verdict verdict = Verdict::Error;
    std::optional<std::string> error_detail;
    double wall_time_s = 0.0;

    std::optional<double> score(MetricId id) const;
    // One JSONL record. Keys: pair_id, reference_path, candidate_path,
    // scores, verdict, error_detail, wall_time_s (the last omitted when
    // include_timing is false).
    std::string to_json_line(bool include_timing = true) const;
};

struct FilterSummary {
    std::size_t total = 0;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t error = 0;
    double pass_rate = 0.0;  // pass / total, 0 for an empty batch
    // Over entries that were scored (pass or fail).
    std::optional<double> score_median;
    std::optional<double> score_min;
    std::optional<double> score_max;

    std::string to_json() const;
};

struct FilterResult {
    std::vector<ManifestEntry> entries;  // input order
    FilterSummary summary;
};

// Scores every pair with config.metric; per-pair failures become
// verdict=error entries and never stop the batch. Output order and every
// non-timing byte are independent of config.workers.
FilterResult filter_dataset(std::span<const ImagePair> pairs, const FilterConfig& config);

std::string manifest_jsonl(std::span<const ManifestEntry> entries, bool include_timing = true);

struct RankResult {
    std::vector<std::size_t> ordering;  // best first; ties by ascending index
    // Higher is better: similarity metrics as-is, mse negated. Failed
    // candidates hold -infinity.
    std::vector<double> scores;
    std::vector<std::optional<std::string>> errors;
};

// Throws InvalidArgument for an empty candidate list.
RankResult rank_best_of_n(const Bitmap& reference, std::span<const Bitmap> candidates,
                          MetricId metric, AlignMode align = AlignMode::Strict,
                          Color fill = Color::white());

// Recounts tokens over each manifest record's "files" (relative to the
// manifest's directory); records without "files" use their "token_count".
// Malformed lines and unreadable payloads are skipped and counted.
DatasetStats dataset_stats(const std::filesystem::path& manifest,
                           const TokenCounter& counter = count_proxy_tokens);

}  // namespace msps

#endif  // MSPS_PIPELINE_HPP
