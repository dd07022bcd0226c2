// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_BITMAP_HPP
#define MSPS_BITMAP_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace msps {

// Linear RGB triple with components in [0, 1].
struct Color {
    double r = 1.0;
    double g = 1.0;
    double b = 1.0;

    static constexpr Color white() { return {1.0, 1.0, 1.0}; }
    static constexpr Color black() { return {0.0, 0.0, 0.0}; }

    // Rec. 709 luma, used when a color has to be applied to a grayscale image.
    double luma() const { return 0.2126 * r + 0.7152 * g + 0.0722 * b; }

    friend bool operator==(const Color&, const Color&) = default;
};

// Dense, row-major, interleaved pixel grid. Values are normalized to [0, 1].
// A Bitmap is immutable once built; every transform returns a new one.
class Bitmap {
public:
    // Validates dims, channel count (1 or 3), buffer length and value range.
    Bitmap(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
           std::vector<double> values);

    static Bitmap filled(std::uint32_t width, std::uint32_t height,
                         std::uint32_t channels, double value);
    static Bitmap filled(std::uint32_t width, std::uint32_t height, Color color);

    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t height() const noexcept { return height_; }
    std::uint32_t channels() const noexcept { return channels_; }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width_) * height_;
    }

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> row(std::uint32_t y) const noexcept {
        const std::size_t stride = static_cast<std::size_t>(width_) * channels_;
        return std::span<const double>(values_).subspan(y * stride, stride);
    }
    double at(std::uint32_t x, std::uint32_t y, std::uint32_t c) const noexcept {
        return values_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
    }

    bool same_shape(const Bitmap& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_ &&
               channels_ == other.channels_;
    }

    friend bool operator==(const Bitmap&, const Bitmap&) = default;

    // Skips the O(n) range check. Only for producers whose output is in range
    // by construction (means and convex blends of valid values).
    struct Trusted {};
    Bitmap(Trusted, std::uint32_t width, std::uint32_t height,
           std::uint32_t channels, std::vector<double> values) noexcept
        : width_(width), height_(height), channels_(channels),
          values_(std::move(values)) {}

private:
    std::uint32_t width_;
    std::uint32_t height_;
    std::uint32_t channels_;
    std::vector<double> values_;
};

// Levels of successive 2x average pooling. levels()[0] is the input.
class ImagePyramid {
public:
    explicit ImagePyramid(Bitmap source);

    const std::vector<Bitmap>& levels() const noexcept { return levels_; }
    std::size_t size() const noexcept { return levels_.size(); }
    const Bitmap& operator[](std::size_t i) const { return levels_[i]; }
    std::uint32_t source_width() const noexcept { return levels_.front().width(); }
    std::uint32_t source_height() const noexcept { return levels_.front().height(); }

private:
    std::vector<Bitmap> levels_;
};

// Output is ceil(W/2) x ceil(H/2). Windows at an odd right/bottom edge are
// partial; their mean is over the 1-2 pixels actually covered.
Bitmap average_pool_2x(const Bitmap& bitmap);

// 1 + floor(log2(min(W, H))) levels.
ImagePyramid build_pyramid(const Bitmap& bitmap);

// Rec. 709 luma. Requires 3 channels.
Bitmap to_grayscale(const Bitmap& bitmap);

enum class AlignMode { Strict, PadToMax };

// Strict returns the pair unchanged and throws DimensionMismatch if the sizes
// differ. PadToMax extends both images right/bottom with `fill` up to the
// element-wise max size. Channel counts must always match.
std::pair<Bitmap, Bitmap> align_pair(const Bitmap& a, const Bitmap& b,
                                     AlignMode mode, Color fill = Color::white());

}  // namespace msps

#endif  // MSPS_BITMAP_HPP
