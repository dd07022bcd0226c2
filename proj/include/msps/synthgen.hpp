// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_SYNTHGEN_HPP
#define MSPS_SYNTHGEN_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msps/scene.hpp"
#include "msps/tokens.hpp"

namespace msps {

// Synthetic paired datasets: each item is a small web page (HTML + CSS) and
// the SVG a browser would produce for it.
enum class Template { Color, ColorResponsive, Size, ColorText, ColorTextSize, Combined };

inline constexpr Template kAllTemplates[] = {Template::Color,     Template::ColorResponsive,
                                             Template::Size,      Template::ColorText,
                                             Template::ColorTextSize, Template::Combined};

std::string_view template_name(Template t) noexcept;
// Throws UnknownTemplate.
Template parse_template(std::string_view name);

inline constexpr std::uint32_t kDesktopWidth = 1280;
inline constexpr std::uint32_t kDesktopHeight = 800;
inline constexpr std::uint32_t kMobileWidth = 375;
inline constexpr std::uint32_t kMobileHeight = 667;
// Media-query breakpoint separating the two color_responsive layouts.
inline constexpr std::uint32_t kMobileBreakpoint = 600;

struct DatasetItem {
    std::string item_id;
    Template template_id = Template::Color;
    std::uint64_t seed = 0;
    std::string markup;
    std::string svg;                   // desktop viewport
    std::optional<SceneSpec> scene;    // absent for text-bearing items
    std::optional<std::string> mobile_svg;  // color_responsive only
    std::optional<SceneSpec> mobile_scene;
    // Sampled placeholders in sampling order.
    std::vector<std::pair<std::string, std::string>> variables;

    // Value of a sampled variable; throws InvalidArgument if absent.
    const std::string& variable(std::string_view name) const;
};

std::string make_item_id(Template t, std::uint64_t seed);

// Pure function of (template, seed).
DatasetItem generate(Template t, std::uint64_t seed);

// Sum of the counter over every payload (markup, svg, mobile svg).
std::size_t item_token_count(const DatasetItem& item, const TokenCounter& counter);

// Non-tag character data of the page body, trimmed, one entry per run.
std::vector<std::string> markup_text_content(std::string_view html);

// One manifest.jsonl record, keys in fixed order.
std::string manifest_line(const DatasetItem& item, std::size_t token_count);

// Writes <id>.html, <id>.svg (and <id>.mobile.svg) for seeds
// base_seed .. base_seed + count - 1, plus manifest.jsonl in seed order.
DatasetStats generate_dataset(Template t, std::uint64_t count, std::uint64_t base_seed,
                              const std::filesystem::path& out_dir,
                              const TokenCounter& counter = count_proxy_tokens,
                              unsigned workers = 1);

struct ClosedLoopReport {
    std::uint64_t checked = 0;
    std::uint64_t passed = 0;
    std::uint64_t pixel_checked = 0;  // items compared by raster, not by text
    double min_msps = 1.0;
    std::vector<std::string> failures;  // item ids
};

// Scene-bearing items must give msps(rasterize_svg_subset(svg),
// rasterize(scene)) == 1.0 for every viewport; text-bearing items must parse
// and carry the same text as their markup.
ClosedLoopReport verify_closed_loop(Template t, std::uint64_t count, std::uint64_t base_seed);

// Bundled vocabulary for the text templates.
const std::array<std::string_view, 1000>& word_list();

}  // namespace msps

#endif  // MSPS_SYNTHGEN_HPP
