// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_PNG_IO_HPP
#define MSPS_PNG_IO_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "msps/bitmap.hpp"

namespace msps {

// Decodes 8/16-bit grayscale, gray+alpha, RGB and RGBA PNGs. Alpha is
// composited source-over onto `alpha_background`; gray+alpha uses the
// background's luma. Palette images, sub-byte depths and Adam7 interlacing
// raise UnsupportedPng; structural damage raises MalformedPng.
Bitmap decode_png(std::span<const std::uint8_t> bytes, Color alpha_background = Color::white());
Bitmap load_png(const std::filesystem::path& path, Color alpha_background = Color::white());

// Incremental decoder for the same formats. The chunk structure is checked
// up front; pixel data is inflated and unfiltered one row per next_row()
// call, so decoded pixel memory stays proportional to the width.
class PngRowReader {
public:
    explicit PngRowReader(std::span<const std::uint8_t> bytes,
                          Color alpha_background = Color::white());
    // Reads the file into memory. Errors carry the path.
    static PngRowReader open(const std::filesystem::path& path,
                             Color alpha_background = Color::white());

    PngRowReader(PngRowReader&&) noexcept;
    PngRowReader& operator=(PngRowReader&&) noexcept;
    ~PngRowReader();

    std::uint32_t width() const noexcept;
    std::uint32_t height() const noexcept;
    std::uint32_t channels() const noexcept;  // 1 or 3, as decode_png
    std::uint32_t rows_read() const noexcept;

    // Next row top to bottom, width * channels values in [0, 1]. The span
    // stays valid until the second call after this one, so the previous row
    // is always still readable. Reading the last row also checks that the
    // compressed stream ends there.
    std::span<const double> next_row();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// 8-bit output, values quantized with round-half-up.
std::vector<std::uint8_t> encode_png(const Bitmap& bitmap);
void save_png(const Bitmap& bitmap, const std::filesystem::path& path);

inline std::uint8_t quantize_8bit(double v) {
    return static_cast<std::uint8_t>(v * 255.0 + 0.5);
}

}  // namespace msps

#endif  // MSPS_PNG_IO_HPP
