// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_SCENE_HPP
#define MSPS_SCENE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msps/bitmap.hpp"

namespace msps {

// 8-bit sRGB color as written in markup (#rrggbb).
struct Rgb8 {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    std::string hex() const;  // lower-case "#rrggbb"
    static std::optional<Rgb8> parse_hex(std::string_view text);
    Color to_color() const { return {r / 255.0, g / 255.0, b / 255.0}; }

    friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

struct SceneRect {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t width = 1;
    std::int64_t height = 1;
    Rgb8 fill;

    friend bool operator==(const SceneRect&, const SceneRect&) = default;
};

// Flat description of a page: a background plus axis-aligned solid
// rectangles painted in order. Rects may overhang the canvas.
struct SceneSpec {
    std::uint32_t width = 1;
    std::uint32_t height = 1;
    Rgb8 background{255, 255, 255};
    std::vector<SceneRect> rects;

    void validate() const;
    friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

// Painter's algorithm, hard edges, 3 channels.
Bitmap rasterize(const SceneSpec& scene);

// Parses the SVG subset emitted by the synthetic generators: an <svg> root
// with integer width/height (and optionally a matching viewBox), <rect>
// elements with integer geometry and #rrggbb fills, <g> groups without
// attributes, and <text> elements, which are accepted but not painted. The
// canvas starts white. Anything else raises UnsupportedSvg naming the
// construct; broken syntax raises MalformedSvg.
struct SvgDocument {
    SceneSpec scene;
    std::vector<std::string> texts;  // character data of each <text>, in order
};

SvgDocument parse_svg_subset(std::string_view svg);
Bitmap rasterize_svg_subset(std::string_view svg);

}  // namespace msps

#endif  // MSPS_SCENE_HPP
