// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/metrics.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <memory>

#include "msps/error.hpp"
#include "pool_kernel.hpp"

namespace msps {
namespace {

// Above this many pixels a level is summed with Neumaier compensation; below
// it the plain double sum already stays well inside 1e-9 relative error.
constexpr std::size_t kCompensatedPixelThreshold = std::size_t{1} << 24;

void require_same_shape(const Bitmap& a, const Bitmap& b) {
    if (a.channels() != b.channels())
        throw Error(ErrorCode::ChannelMismatch,
                    "channel counts differ: " + std::to_string(a.channels()) + " vs " +
                        std::to_string(b.channels()));
    if (a.width() != b.width() || a.height() != b.height())
        throw Error(ErrorCode::DimensionMismatch,
                    "image sizes differ: " + std::to_string(a.width()) + "x" +
                        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                        std::to_string(b.height()));
}

double sum_squared_difference(std::span<const double> x, std::span<const double> y,
                              bool compensated) {
    const std::size_t n = x.size();
    if (!compensated) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - y[i];
            sum += d * d;
        }
        return sum;
    }
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - y[i];
        const double term = d * d;
        const double t = sum + term;
        carry += std::abs(sum) >= term ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + carry;
}

// Running sum of squared differences, fed in index order. Matches
// sum_squared_difference over the concatenated input exactly.
class LevelSum {
public:
    LevelSum() = default;
    explicit LevelSum(bool compensated) : compensated_(compensated) {}

    void add(const double* x, const double* y, std::size_t n) {
        if (!compensated_) {
            double sum = sum_;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = x[i] - y[i];
                sum += d * d;
            }
            sum_ = sum;
            return;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - y[i];
            const double term = d * d;
            const double t = sum_ + term;
            carry_ += std::abs(sum_) >= term ? (sum_ - t) + term : (term - t) + sum_;
            sum_ = t;
        }
    }
    double value() const { return compensated_ ? sum_ + carry_ : sum_; }

private:
    bool compensated_ = false;
    double sum_ = 0.0;
    double carry_ = 0.0;
};

double level_mse(std::span<const double> x, std::span<const double> y, std::size_t pixels) {
    const bool compensated = pixels > kCompensatedPixelThreshold;
    return sum_squared_difference(x, y, compensated) / static_cast<double>(x.size());
}

double level_mse(const Bitmap& a, const Bitmap& b) {
    return level_mse(a.values(), b.values(), a.pixel_count());
}

}  // namespace

std::string_view metric_name(MetricId id) noexcept {
    switch (id) {
        case MetricId::Msps: return "msps";
        case MetricId::PixelSimilarity: return "pixel_similarity";
        case MetricId::Mse: return "mse";
    }
    return "unknown";
}

std::optional<MetricId> parse_metric(std::string_view name) noexcept {
    for (MetricId id : kAllMetrics)
        if (metric_name(id) == name) return id;
    return std::nullopt;
}

std::size_t level_count(std::uint32_t width, std::uint32_t height) {
    if (width == 0 || height == 0)
        throw Error(ErrorCode::InvalidArgument, "level_count needs dimensions >= 1");
    // bit_width(m) == 1 + floor(log2(m)) for m >= 1.
    return static_cast<std::size_t>(std::bit_width(std::min(width, height)));
}

double mse(const Bitmap& a, const Bitmap& b) {
    require_same_shape(a, b);
    return level_mse(a, b);
}

double pixel_similarity(const Bitmap& a, const Bitmap& b) { return 1.0 - mse(a, b); }

double msps(const ImagePyramid& a, const ImagePyramid& b) {
    require_same_shape(a[0], b[0]);
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += level_mse(a[i], b[i]);
    return 1.0 - total / static_cast<double>(a.size());
}

struct PairScorer::Impl {
    struct Level {
        std::uint32_t width = 0;
        std::uint32_t height = 0;
        std::size_t stride = 0;
        std::vector<double> rows_a;  // two rows, slot y % 2 (pooled levels only)
        std::vector<double> rows_b;
        LevelSum sum;
    };

    std::uint32_t channels = 0;
    detail::RowFn pool = nullptr;
    std::vector<Level> levels;
    // Level-1 rows live in caller memory; the current and previous ones.
    const double* src_a[2] = {nullptr, nullptr};
    const double* src_b[2] = {nullptr, nullptr};
    std::uint32_t rows_added = 0;

    const double* row_a(std::size_t i, std::uint32_t y) const {
        return i == 0 ? src_a[y % 2] : levels[i].rows_a.data() + (y % 2) * levels[i].stride;
    }
    const double* row_b(std::size_t i, std::uint32_t y) const {
        return i == 0 ? src_b[y % 2] : levels[i].rows_b.data() + (y % 2) * levels[i].stride;
    }

    // Row y of level i is final: score it, and pool it into the next level
    // once its pair is complete (or it is the last row of an odd height).
    void on_row(std::size_t i, std::uint32_t y) {
        while (true) {
            Level& l = levels[i];
            l.sum.add(row_a(i, y), row_b(i, y), l.stride);
            if (i + 1 == levels.size()) return;
            if (y % 2 == 0 && y + 1 < l.height) return;
            const std::uint32_t oy = y / 2;
            const bool pair = y % 2 == 1;
            Level& next = levels[i + 1];
            double* dst_a = next.rows_a.data() + (oy % 2) * next.stride;
            double* dst_b = next.rows_b.data() + (oy % 2) * next.stride;
            pool(pair ? row_a(i, y - 1) : row_a(i, y), pair ? row_a(i, y) : nullptr, l.width, channels, dst_a);
            pool(pair ? row_b(i, y - 1) : row_b(i, y), pair ? row_b(i, y) : nullptr, l.width, channels, dst_b);
            ++i;
            y = oy;
        }
    }

    double level_mean(const Level& l) const {
        return l.sum.value() / (static_cast<double>(l.stride) * l.height);
    }
};

PairScorer::PairScorer(std::uint32_t width, std::uint32_t height, std::uint32_t channels)
    : impl_(std::make_unique<Impl>()) {
    if (channels != 1 && channels != 3)
        throw Error(ErrorCode::InvalidArgument, "channel count must be 1 or 3");
    const std::size_t n = level_count(width, height);
    impl_->channels = channels;
    impl_->pool = detail::row_kernel(channels);
    impl_->levels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Impl::Level& l = impl_->levels[i];
        l.width = width;
        l.height = height;
        l.stride = static_cast<std::size_t>(width) * channels;
        l.sum = LevelSum(static_cast<std::size_t>(width) * height > kCompensatedPixelThreshold);
        if (i > 0) {
            l.rows_a.resize(2 * l.stride);
            l.rows_b.resize(2 * l.stride);
        }
        width = (width + 1) / 2;
        height = (height + 1) / 2;
    }
}

PairScorer::PairScorer(PairScorer&&) noexcept = default;
PairScorer& PairScorer::operator=(PairScorer&&) noexcept = default;
PairScorer::~PairScorer() = default;

void PairScorer::add_rows(std::span<const double> a_row, std::span<const double> b_row) {
    Impl& m = *impl_;
    const Impl::Level& top = m.levels.front();
    if (m.rows_added >= top.height) throw Error(ErrorCode::InvalidArgument, "all rows already added");
    if (a_row.size() != top.stride || b_row.size() != top.stride)
        throw Error(ErrorCode::InvalidArgument, "row length does not match width * channels");
    const std::uint32_t y = m.rows_added++;
    m.src_a[y % 2] = a_row.data();
    m.src_b[y % 2] = b_row.data();
    m.on_row(0, y);
}

std::uint32_t PairScorer::rows_added() const noexcept { return impl_->rows_added; }

bool PairScorer::complete() const noexcept {
    return impl_->rows_added == impl_->levels.front().height;
}

double PairScorer::mse() const {
    if (!complete()) throw Error(ErrorCode::InvalidArgument, "pair scorer is missing rows");
    return impl_->level_mean(impl_->levels.front());
}

double PairScorer::msps() const {
    if (!complete()) throw Error(ErrorCode::InvalidArgument, "pair scorer is missing rows");
    double total = 0.0;
    for (const Impl::Level& l : impl_->levels) total += impl_->level_mean(l);
    return 1.0 - total / static_cast<double>(impl_->levels.size());
}

double PairScorer::score(MetricId id) const {
    switch (id) {
        case MetricId::Msps: return msps();
        case MetricId::PixelSimilarity: return 1.0 - mse();
        case MetricId::Mse: return mse();
    }
    throw Error(ErrorCode::InvalidArgument, "unknown metric");
}

double msps(const Bitmap& a, const Bitmap& b) {
    require_same_shape(a, b);
    // One pass over both inputs; no pyramid is materialized.
    PairScorer scorer(a.width(), a.height(), a.channels());
    for (std::uint32_t y = 0; y < a.height(); ++y) scorer.add_rows(a.row(y), b.row(y));
    return scorer.msps();
}

double score(MetricId id, const Bitmap& a, const Bitmap& b) {
    switch (id) {
        case MetricId::Msps: return msps(a, b);
        case MetricId::PixelSimilarity: return pixel_similarity(a, b);
        case MetricId::Mse: return mse(a, b);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown metric");
}

std::vector<ScoreRecord> score_pair(const Bitmap& a, const Bitmap& b,
                                    std::span<const MetricId> metrics,
                                    const std::string& pair_id) {
    using Clock = std::chrono::steady_clock;
    std::vector<ScoreRecord> records;
    records.reserve(metrics.size());
    for (MetricId id : metrics) {
        const auto start = Clock::now();
        const double value = score(id, a, b);
        const std::chrono::duration<double> elapsed = Clock::now() - start;
        records.push_back({id, value, elapsed.count(), pair_id});
    }
    return records;
}

}  // namespace msps
