// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/synthgen.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "msps/error.hpp"
#include "msps/metrics.hpp"
#include "msps/rng.hpp"

namespace msps {
namespace {

constexpr Rgb8 kWhite{255, 255, 255};

// Templates a combined item may draw from (color_responsive is excluded).
constexpr Template kCombinedSources[] = {Template::Color, Template::Size, Template::ColorText,
                                         Template::ColorTextSize};

Rgb8 sample_color(SplitMix64& rng) {
    const std::uint64_t v = rng.uniform(0, 0xFFFFFF);
    return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
            static_cast<std::uint8_t>(v)};
}

std::string_view sample_word(SplitMix64& rng) {
    return word_list()[rng.uniform(0, word_list().size() - 1)];
}

// round(percent * extent / 100), halves rounded up, in exact integers.
std::int64_t percent_of(std::uint64_t percent, std::uint32_t extent) {
    return static_cast<std::int64_t>((percent * extent + 50) / 100);
}

std::string page(std::string_view title, std::string_view style, std::string_view body) {
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += "<meta name=\"viewport\" content=\"width=device-width, initial-scale=1\">\n";
    out += "<title>";
    out += title;
    out += "</title>\n<style>\n";
    out += style;
    out += "html, body {\n  margin: 0;\n  padding: 0;\n  width: 100%;\n  height: 100%;\n}\n";
    out += "</style>\n</head>\n<body>\n";
    out += body;
    out += "</body>\n</html>\n";
    return out;
}

std::string svg_open(std::uint32_t w, std::uint32_t h) {
    const std::string ws = std::to_string(w);
    const std::string hs = std::to_string(h);
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + ws + "\" height=\"" + hs +
           "\" viewBox=\"0 0 " + ws + " " + hs + "\">\n";
}

std::string svg_rect(const SceneRect& r) {
    return "<rect x=\"" + std::to_string(r.x) + "\" y=\"" + std::to_string(r.y) + "\" width=\"" +
           std::to_string(r.width) + "\" height=\"" + std::to_string(r.height) + "\" fill=\"" +
           r.fill.hex() + "\"/>\n";
}

std::string svg_close() { return "</svg>\n"; }

SceneSpec flat_scene(std::uint32_t w, std::uint32_t h, Rgb8 color) {
    return SceneSpec{w, h, kWhite, {SceneRect{0, 0, w, h, color}}};
}

std::string scene_svg(const SceneSpec& scene) {
    std::string out = svg_open(scene.width, scene.height);
    for (const auto& r : scene.rects) out += svg_rect(r);
    return out + svg_close();
}

std::string background_style(const Rgb8& color) {
    return ":root {\n  --background-color: " + color.hex() +
           ";\n}\nbody {\n  background-color: var(--background-color);\n}\n";
}

void make_color(DatasetItem& item, SplitMix64& rng) {
    const Rgb8 bg = sample_color(rng);
    item.variables = {{"background_color", bg.hex()}};
    item.markup = page("Color", background_style(bg), "");
    item.scene = flat_scene(kDesktopWidth, kDesktopHeight, bg);
    item.svg = scene_svg(*item.scene);
}

void make_color_responsive(DatasetItem& item, SplitMix64& rng) {
    const Rgb8 desktop = sample_color(rng);
    const Rgb8 mobile = sample_color(rng);
    item.variables = {{"desktop_background_color", desktop.hex()},
                      {"mobile_background_color", mobile.hex()}};
    const std::string style = background_style(desktop) + "@media (max-width: " +
                              std::to_string(kMobileBreakpoint) +
                              "px) {\n  :root {\n    --background-color: " + mobile.hex() +
                              ";\n  }\n}\n";
    item.markup = page("Color Responsive", style, "");
    item.scene = flat_scene(kDesktopWidth, kDesktopHeight, desktop);
    item.svg = scene_svg(*item.scene);
    item.mobile_scene = flat_scene(kMobileWidth, kMobileHeight, mobile);
    item.mobile_svg = scene_svg(*item.mobile_scene);
}

void make_size(DatasetItem& item, SplitMix64& rng) {
    const std::uint64_t wp = rng.uniform(1, 100);
    const std::uint64_t hp = rng.uniform(1, 100);
    const Rgb8 box = sample_color(rng);
    item.variables = {{"box_width_percent", std::to_string(wp)},
                      {"box_height_percent", std::to_string(hp)},
                      {"box_color", box.hex()}};
    const std::string style = ":root {\n  --box-width: " + std::to_string(wp) +
                              "%;\n  --box-height: " + std::to_string(hp) +
                              "%;\n  --box-color: " + box.hex() +
                              ";\n}\nbody {\n  background-color: #ffffff;\n}\n"
                              ".box {\n  width: var(--box-width);\n  height: var(--box-height);\n"
                              "  background-color: var(--box-color);\n}\n";
    item.markup = page("Size", style, "<div class=\"box\"></div>\n");
    SceneSpec scene{kDesktopWidth, kDesktopHeight, kWhite, {}};
    scene.rects.push_back({0, 0, kDesktopWidth, kDesktopHeight, kWhite});
    scene.rects.push_back({0, 0, percent_of(wp, kDesktopWidth), percent_of(hp, kDesktopHeight), box});
    item.scene = scene;
    item.svg = scene_svg(scene);
}

void make_color_text(DatasetItem& item, SplitMix64& rng) {
    const Rgb8 bg = sample_color(rng);
    const std::string word(sample_word(rng));
    item.variables = {{"background_color", bg.hex()}, {"word", word}};
    const std::string style = background_style(bg) +
                              ".word {\n  margin: 0;\n  padding: 16px;\n"
                              "  font-family: Arial, sans-serif;\n  font-size: 48px;\n"
                              "  color: #000000;\n}\n";
    item.markup = page("Color Text", style, "<p class=\"word\">" + word + "</p>\n");
    item.svg = svg_open(kDesktopWidth, kDesktopHeight) +
               svg_rect({0, 0, kDesktopWidth, kDesktopHeight, bg}) +
               "<text x=\"16\" y=\"64\" font-family=\"Arial\" font-size=\"48\" "
               "fill=\"#000000\">" + word + "</text>\n" + svg_close();
}

void make_color_text_size(DatasetItem& item, SplitMix64& rng) {
    const Rgb8 bg = sample_color(rng);
    const Rgb8 box = sample_color(rng);
    const Rgb8 ink = sample_color(rng);
    const std::uint64_t wp = rng.uniform(1, 100);
    const std::uint64_t hp = rng.uniform(1, 100);
    const std::uint64_t font = rng.uniform(12, 72);
    const std::string word(sample_word(rng));
    item.variables = {{"background_color", bg.hex()},     {"box_color", box.hex()},
                      {"text_color", ink.hex()},          {"box_width_percent", std::to_string(wp)},
                      {"box_height_percent", std::to_string(hp)},
                      {"font_size", std::to_string(font)}, {"word", word}};
    const std::string style =
        ":root {\n  --background-color: " + bg.hex() + ";\n  --box-color: " + box.hex() +
        ";\n  --text-color: " + ink.hex() + ";\n  --box-width: " + std::to_string(wp) +
        "%;\n  --box-height: " + std::to_string(hp) + "%;\n  --font-size: " +
        std::to_string(font) +
        "px;\n}\nbody {\n  background-color: var(--background-color);\n}\n"
        ".box {\n  display: flex;\n  align-items: center;\n  justify-content: center;\n"
        "  width: var(--box-width);\n  height: var(--box-height);\n"
        "  background-color: var(--box-color);\n}\n"
        ".word {\n  margin: 0;\n  font-family: Arial, sans-serif;\n"
        "  font-size: var(--font-size);\n  color: var(--text-color);\n}\n";
    item.markup = page("Color Text Size", style,
                       "<div class=\"box\">\n<p class=\"word\">" + word + "</p>\n</div>\n");
    const std::int64_t bw = percent_of(wp, kDesktopWidth);
    const std::int64_t bh = percent_of(hp, kDesktopHeight);
    item.svg = svg_open(kDesktopWidth, kDesktopHeight) +
               svg_rect({0, 0, kDesktopWidth, kDesktopHeight, bg}) + svg_rect({0, 0, bw, bh, box}) +
               "<text x=\"" + std::to_string(bw / 2) + "\" y=\"" + std::to_string(bh / 2) +
               "\" font-family=\"Arial\" font-size=\"" + std::to_string(font) + "\" fill=\"" +
               ink.hex() + "\" text-anchor=\"middle\" dominant-baseline=\"central\">" + word +
               "</text>\n" + svg_close();
}

void fill_item(DatasetItem& item, Template t, SplitMix64& rng) {
    switch (t) {
        case Template::Color: make_color(item, rng); return;
        case Template::ColorResponsive: make_color_responsive(item, rng); return;
        case Template::Size: make_size(item, rng); return;
        case Template::ColorText: make_color_text(item, rng); return;
        case Template::ColorTextSize: make_color_text_size(item, rng); return;
        case Template::Combined: {
            const Template source = kCombinedSources[rng.uniform(0, std::size(kCombinedSources) - 1)];
            SplitMix64 child = rng.split();
            fill_item(item, source, child);
            item.variables.insert(item.variables.begin(),
                                  {"source_template", std::string(template_name(source))});
            return;
        }
    }
    throw Error(ErrorCode::UnknownTemplate, "unknown template");
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace

std::string_view template_name(Template t) noexcept {
    switch (t) {
        case Template::Color: return "color";
        case Template::ColorResponsive: return "color_responsive";
        case Template::Size: return "size";
        case Template::ColorText: return "color_text";
        case Template::ColorTextSize: return "color_text_size";
        case Template::Combined: return "combined";
    }
    return "unknown";
}

Template parse_template(std::string_view name) {
    for (Template t : kAllTemplates)
        if (template_name(t) == name) return t;
    throw Error(ErrorCode::UnknownTemplate, "unknown template '" + std::string(name) + "'");
}

const std::string& DatasetItem::variable(std::string_view name) const {
    for (const auto& [k, v] : variables)
        if (k == name) return v;
    throw Error(ErrorCode::InvalidArgument, "item has no variable '" + std::string(name) + "'");
}

std::string make_item_id(Template t, std::uint64_t seed) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(seed));
    return std::string(template_name(t)) + "-" + buf;
}

DatasetItem generate(Template t, std::uint64_t seed) {
    DatasetItem item;
    item.item_id = make_item_id(t, seed);
    item.template_id = t;
    item.seed = seed;
    // Template index is folded into the stream so two templates sharing a
    // seed do not share their draws.
    SplitMix64 rng(SplitMix64::mix(seed) ^ (static_cast<std::uint64_t>(t) + 1));
    fill_item(item, t, rng);
    return item;
}

std::size_t item_token_count(const DatasetItem& item, const TokenCounter& counter) {
    std::size_t n = counter(item.markup) + counter(item.svg);
    if (item.mobile_svg) n += counter(*item.mobile_svg);
    return n;
}

std::vector<std::string> markup_text_content(std::string_view html) {
    std::vector<std::string> out;
    const auto body = html.find("<body");
    if (body == std::string_view::npos) return out;
    std::size_t pos = html.find('>', body);
    const auto end = html.find("</body>", body);
    if (pos == std::string_view::npos) return out;
    ++pos;
    const std::size_t stop = end == std::string_view::npos ? html.size() : end;
    while (pos < stop) {
        const auto lt = html.find('<', pos);
        const std::size_t run_end = std::min(lt == std::string_view::npos ? stop : lt, stop);
        std::string_view run = html.substr(pos, run_end - pos);
        while (!run.empty() && std::isspace(static_cast<unsigned char>(run.front()))) run.remove_prefix(1);
        while (!run.empty() && std::isspace(static_cast<unsigned char>(run.back()))) run.remove_suffix(1);
        if (!run.empty()) out.emplace_back(run);
        if (run_end >= stop) break;
        const auto gt = html.find('>', run_end);
        if (gt == std::string_view::npos) break;
        pos = gt + 1;
    }
    return out;
}

std::string manifest_line(const DatasetItem& item, std::size_t token_count) {
    nlohmann::ordered_json j;
    j["item_id"] = item.item_id;
    j["template"] = template_name(item.template_id);
    j["seed"] = item.seed;
    nlohmann::ordered_json vars = nlohmann::ordered_json::object();
    for (const auto& [k, v] : item.variables) vars[k] = v;
    j["variables"] = std::move(vars);
    j["token_count"] = token_count;
    nlohmann::ordered_json files = {item.item_id + ".html", item.item_id + ".svg"};
    if (item.mobile_svg) files.push_back(item.item_id + ".mobile.svg");
    j["files"] = std::move(files);
    return j.dump();
}

DatasetStats generate_dataset(Template t, std::uint64_t count, std::uint64_t base_seed,
                              const std::filesystem::path& out_dir, const TokenCounter& counter,
                              unsigned workers) {
    if (count == 0) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw Error(ErrorCode::Io, "cannot create output directory " + out_dir.string());

    std::vector<std::string> lines(count);
    std::vector<std::uint64_t> counts(count);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};

    auto work = [&] {
        for (std::uint64_t i; !failed && (i = next.fetch_add(1)) < count;) {
            try {
                const DatasetItem item = generate(t, base_seed + i);
                write_file(out_dir / (item.item_id + ".html"), item.markup);
                write_file(out_dir / (item.item_id + ".svg"), item.svg);
                if (item.mobile_svg) write_file(out_dir / (item.item_id + ".mobile.svg"), *item.mobile_svg);
                counts[i] = item_token_count(item, counter);
                lines[i] = manifest_line(item, counts[i]);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };

    const unsigned threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, count)));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    std::string manifest;
    for (const auto& line : lines) {
        manifest += line;
        manifest += '\n';
    }
    write_file(out_dir / "manifest.jsonl", manifest);
    return summarize_counts(counts);
}

ClosedLoopReport verify_closed_loop(Template t, std::uint64_t count, std::uint64_t base_seed) {
    ClosedLoopReport report;
    for (std::uint64_t i = 0; i < count; ++i) {
        const DatasetItem item = generate(t, base_seed + i);
        ++report.checked;
        bool ok = true;
        try {
            if (item.scene) {
                ++report.pixel_checked;
                double worst = msps(rasterize_svg_subset(item.svg), rasterize(*item.scene));
                if (item.mobile_svg && item.mobile_scene)
                    worst = std::min(worst, msps(rasterize_svg_subset(*item.mobile_svg),
                                                 rasterize(*item.mobile_scene)));
                report.min_msps = std::min(report.min_msps, worst);
                ok = worst == 1.0;
            } else {
                ok = parse_svg_subset(item.svg).texts == markup_text_content(item.markup);
            }
        } catch (const Error&) {
            ok = false;
        }
        if (ok)
            ++report.passed;
        else
            report.failures.push_back(item.item_id);
    }
    return report;
}

}  // namespace msps
