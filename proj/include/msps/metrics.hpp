// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_METRICS_HPP
#define MSPS_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msps/bitmap.hpp"

namespace msps {

enum class MetricId { Msps, PixelSimilarity, Mse };

inline constexpr MetricId kAllMetrics[] = {MetricId::Msps, MetricId::PixelSimilarity, MetricId::Mse};

std::string_view metric_name(MetricId id) noexcept;
std::optional<MetricId> parse_metric(std::string_view name) noexcept;

// True for metrics where 1.0 means identical (msps, pixel_similarity).
constexpr bool is_similarity(MetricId id) noexcept { return id != MetricId::Mse; }

// Loss in the "less is more similar" orientation: 1 - similarity, or the raw
// value for error metrics.
constexpr double to_loss(MetricId id, double value) noexcept {
    return is_similarity(id) ? 1.0 - value : value;
}

// Number of pyramid levels for a source of the given size:
// 1 + floor(log2(min(width, height))), evaluated as a bit length.
std::size_t level_count(std::uint32_t width, std::uint32_t height);

// Mean squared difference over every pixel and channel. Throws
// DimensionMismatch / ChannelMismatch unless the shapes agree.
double mse(const Bitmap& a, const Bitmap& b);

double pixel_similarity(const Bitmap& a, const Bitmap& b);

// Multi-scale pixel similarity: one minus the mean of the per-level MSE over
// the two average-pooling pyramids.
double msps(const Bitmap& a, const Bitmap& b);
double msps(const ImagePyramid& a, const ImagePyramid& b);

double score(MetricId id, const Bitmap& a, const Bitmap& b);

// Scores one pair of equally shaped images fed row by row, top to bottom.
// A single pass yields every metric with memory proportional to the width;
// results equal mse(), pixel_similarity() and msps() exactly.
class PairScorer {
public:
    // Throws InvalidArgument for a zero dimension or channels other than 1, 3.
    PairScorer(std::uint32_t width, std::uint32_t height, std::uint32_t channels);
    PairScorer(PairScorer&&) noexcept;
    PairScorer& operator=(PairScorer&&) noexcept;
    ~PairScorer();

    // Row rows_added() of each image, width * channels values. The rows from
    // the previous call must still be readable; they are pooled with these.
    void add_rows(std::span<const double> a_row, std::span<const double> b_row);
    std::uint32_t rows_added() const noexcept;
    bool complete() const noexcept;

    // Throw InvalidArgument until every row has been added.
    double mse() const;
    double msps() const;
    double score(MetricId id) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct ScoreRecord {
    MetricId metric;
    double value;
    double wall_time_s;
    std::string pair_id;
};

// One record per requested metric, in request order, each timed separately.
std::vector<ScoreRecord> score_pair(const Bitmap& a, const Bitmap& b,
                                    std::span<const MetricId> metrics,
                                    const std::string& pair_id);

}  // namespace msps

#endif  // MSPS_METRICS_HPP
