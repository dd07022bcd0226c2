// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/bitmap.hpp"

#include <algorithm>
#include <string>

#include "msps/error.hpp"
#include "msps/metrics.hpp"
#include "pool_kernel.hpp"

namespace msps {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::FileNotFound: return "file_not_found";
        case ErrorCode::Io: return "io";
        case ErrorCode::MalformedPng: return "malformed_png";
        case ErrorCode::UnsupportedPng: return "unsupported_png";
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::ChannelMismatch: return "channel_mismatch";
        case ErrorCode::UnsupportedSvg: return "unsupported_svg";
        case ErrorCode::MalformedSvg: return "malformed_svg";
        case ErrorCode::UnknownTemplate: return "unknown_template";
        case ErrorCode::Parse: return "parse";
    }
    return "unknown";
}

Bitmap::Bitmap(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
               std::vector<double> values)
    : width_(width), height_(height), channels_(channels), values_(std::move(values)) {
    if (width_ == 0 || height_ == 0)
        throw Error(ErrorCode::InvalidArgument, "bitmap dimensions must be >= 1");
    if (channels_ != 1 && channels_ != 3)
        throw Error(ErrorCode::InvalidArgument,
                    "bitmap channel count must be 1 or 3, got " + std::to_string(channels_));
    const std::size_t expected = static_cast<std::size_t>(width_) * height_ * channels_;
    if (values_.size() != expected)
        throw Error(ErrorCode::InvalidArgument,
                    "bitmap buffer holds " + std::to_string(values_.size()) +
                        " values, expected " + std::to_string(expected));
    for (double v : values_) {
        // Written so that NaN also fails.
        if (!(v >= 0.0 && v <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "bitmap value outside [0, 1]");
    }
}

Bitmap Bitmap::filled(std::uint32_t width, std::uint32_t height, std::uint32_t channels,
                      double value) {
    const std::size_t n = static_cast<std::size_t>(width) * height * channels;
    return Bitmap(width, height, channels, std::vector<double>(n, value));
}

Bitmap Bitmap::filled(std::uint32_t width, std::uint32_t height, Color color) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<double> values(n * 3);
    for (std::size_t i = 0; i < n; ++i) {
        values[3 * i] = color.r;
        values[3 * i + 1] = color.g;
        values[3 * i + 2] = color.b;
    }
    return Bitmap(width, height, 3, std::move(values));
}

namespace {

using detail::RowFn;
using detail::row_kernel;

// Output row oy of pooling a w x h grid.
void pool_output_row(RowFn fn, const double* src, std::uint32_t w, std::uint32_t h,
                     std::uint32_t c, std::uint32_t oy, double* dst) {
    const std::size_t stride = static_cast<std::size_t>(w) * c;
    const std::uint32_t y0 = 2 * oy;
    const double* r0 = src + y0 * stride;
    fn(r0, y0 + 1 < h ? r0 + stride : nullptr, w, c, dst);
}

}  // namespace

Bitmap average_pool_2x(const Bitmap& bitmap) {
    const std::uint32_t w = bitmap.width();
    const std::uint32_t h = bitmap.height();
    const std::uint32_t c = bitmap.channels();
    const std::uint32_t ow = (w + 1) / 2;
    const std::uint32_t oh = (h + 1) / 2;
    std::vector<double> out(static_cast<std::size_t>(ow) * oh * c);
    const RowFn fn = row_kernel(c);
    for (std::uint32_t oy = 0; oy < oh; ++oy)
        pool_output_row(fn, bitmap.values().data(), w, h, c, oy,
                        out.data() + static_cast<std::size_t>(oy) * ow * c);
    // Means of values in [0, 1] stay in [0, 1] under monotone rounding.
    return Bitmap(Bitmap::Trusted{}, ow, oh, c, std::move(out));
}


ImagePyramid::ImagePyramid(Bitmap source) {
    const std::size_t n = level_count(source.width(), source.height());
    levels_.reserve(n);
    levels_.push_back(std::move(source));
    while (levels_.size() < n) levels_.push_back(average_pool_2x(levels_.back()));
}

ImagePyramid build_pyramid(const Bitmap& bitmap) { return ImagePyramid(bitmap); }

Bitmap to_grayscale(const Bitmap& bitmap) {
    if (bitmap.channels() != 3)
        throw Error(ErrorCode::ChannelMismatch,
                    "to_grayscale expects 3 channels, got " + std::to_string(bitmap.channels()));
    const auto src = bitmap.values();
    std::vector<double> out(bitmap.pixel_count());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double y = 0.2126 * src[3 * i] + 0.7152 * src[3 * i + 1] + 0.0722 * src[3 * i + 2];
        out[i] = std::clamp(y, 0.0, 1.0);
    }
    return Bitmap(Bitmap::Trusted{}, bitmap.width(), bitmap.height(), 1, std::move(out));
}

namespace {

Bitmap pad_to(const Bitmap& src, std::uint32_t width, std::uint32_t height, Color fill) {
    if (src.width() == width && src.height() == height) return src;
    const std::uint32_t c = src.channels();
    std::vector<double> fill_px =
        c == 3 ? std::vector<double>{fill.r, fill.g, fill.b} : std::vector<double>{fill.luma()};
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(width) * height * c);
    for (std::uint32_t y = 0; y < height; ++y) {
        if (y < src.height()) {
            const auto row = src.row(y);
            out.insert(out.end(), row.begin(), row.end());
        }
        const std::uint32_t from = y < src.height() ? src.width() : 0;
        for (std::uint32_t x = from; x < width; ++x)
            out.insert(out.end(), fill_px.begin(), fill_px.end());
    }
    return Bitmap(width, height, c, std::move(out));
}

}  // namespace

std::pair<Bitmap, Bitmap> align_pair(const Bitmap& a, const Bitmap& b, AlignMode mode,
                                     Color fill) {
    if (a.channels() != b.channels())
        throw Error(ErrorCode::ChannelMismatch,
                    "channel counts differ: " + std::to_string(a.channels()) + " vs " +
                        std::to_string(b.channels()));
    if (mode == AlignMode::Strict) {
        if (a.width() != b.width() || a.height() != b.height())
            throw Error(ErrorCode::DimensionMismatch,
                        "image sizes differ: " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                            "x" + std::to_string(b.height()));
        return {a, b};
    }
    const std::uint32_t w = std::max(a.width(), b.width());
    const std::uint32_t h = std::max(a.height(), b.height());
    return {pad_to(a, w, h, fill), pad_to(b, w, h, fill)};
}

}  // namespace msps
