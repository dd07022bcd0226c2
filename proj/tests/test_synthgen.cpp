// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include <regex>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "msps/error.hpp"
#include "msps/metrics.hpp"
#include "msps/rng.hpp"
#include "msps/scene.hpp"
#include "msps/synthgen.hpp"
#include "msps/tokens.hpp"
#include "test_support.hpp"

using namespace msps;
using msps::test::read_file;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Parse;
}

std::string svg_doc(const std::string& body, int w = 4, int h = 3) {
    const std::string ws = std::to_string(w), hs = std::to_string(h);
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + ws + "\" height=\"" + hs + "\">" + body +
           "</svg>";
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
    // First outputs for seed 0 as published with the algorithm.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    SplitMix64 bounded(123);
    for (int i = 0; i < 1000; ++i) {
        const auto v = bounded.uniform(3, 9);
        CHECK(v >= 3);
        CHECK(v <= 9);
    }
}

TEST_CASE("hex colors") {
    CHECK(Rgb8{255, 0, 16}.hex() == "#ff0010");
    CHECK(Rgb8::parse_hex("#A0b1C2") == Rgb8{0xa0, 0xb1, 0xc2});
    CHECK_FALSE(Rgb8::parse_hex("a0b1c2").has_value());
    CHECK_FALSE(Rgb8::parse_hex("#abc").has_value());
    CHECK_FALSE(Rgb8::parse_hex("#gg0000").has_value());
}

TEST_CASE("rasterize") {
    SUBCASE("background only") {
        const Bitmap b = rasterize(SceneSpec{3, 2, Rgb8{255, 0, 0}, {}});
        CHECK(b == Bitmap::filled(3, 2, Color{1.0, 0.0, 0.0}));
    }
    SUBCASE("full-canvas rect over white") {
        const Bitmap b = rasterize(SceneSpec{3, 2, Rgb8{255, 255, 255}, {SceneRect{0, 0, 3, 2, Rgb8{0, 0, 0}}}});
        CHECK(b == Bitmap::filled(3, 2, Color::black()));
    }
    SUBCASE("later rects paint over earlier ones and are clipped") {
        SceneSpec s{4, 4, Rgb8{255, 255, 255}, {}};
        s.rects.push_back({0, 0, 3, 3, Rgb8{255, 0, 0}});
        s.rects.push_back({2, 2, 10, 10, Rgb8{0, 0, 255}});
        s.rects.push_back({-5, 3, 6, 1, Rgb8{0, 255, 0}});
        const Bitmap b = rasterize(s);
        CHECK(b.at(1, 1, 0) == 1.0);
        CHECK(b.at(2, 2, 2) == 1.0);
        CHECK(b.at(2, 2, 0) == 0.0);
        CHECK(b.at(3, 3, 2) == 1.0);
        CHECK(b.at(0, 3, 1) == 1.0);
        CHECK(b.at(0, 3, 0) == 0.0);
        CHECK(b.at(3, 0, 0) == 1.0);  // untouched background
        CHECK(b.at(3, 0, 1) == 1.0);
    }
    SUBCASE("invalid scenes") {
        CHECK(code_of([] { rasterize(SceneSpec{0, 2, {}, {}}); }) == ErrorCode::InvalidArgument);
        CHECK(code_of([] { rasterize(SceneSpec{2, 2, {}, {SceneRect{0, 0, 0, 1, {}}}}); }) ==
              ErrorCode::InvalidArgument);
    }
}

TEST_CASE("svg subset parsing") {
    SUBCASE("rects, groups and prolog") {
        const std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- note -->\n" +
                                svg_doc("<g><rect x=\"1\" y=\"0\" width=\"2\" height=\"2\" fill=\"#00ff00\"/></g>"
                                        "<rect x='0' y='2' width='4' height='1' fill='#0000ff'></rect>");
        const SvgDocument doc = parse_svg_subset(svg);
        CHECK(doc.scene.width == 4);
        CHECK(doc.scene.height == 3);
        REQUIRE(doc.scene.rects.size() == 2);
        CHECK(doc.scene.rects[0] == SceneRect{1, 0, 2, 2, Rgb8{0, 255, 0}});
        CHECK(doc.scene.rects[1].fill == Rgb8{0, 0, 255});
        const Bitmap b = rasterize_svg_subset(svg);
        CHECK(b.at(0, 0, 0) == 1.0);
        CHECK(b.at(1, 0, 1) == 1.0);
        CHECK(b.at(1, 0, 0) == 0.0);
        CHECK(b.at(3, 2, 2) == 1.0);
    }
    SUBCASE("text is collected, not painted") {
        const std::string svg =
            svg_doc("<text x=\"1\" y=\"2\" font-family=\"Arial\" font-size=\"12\" fill=\"#000000\">hello</text>");
        const SvgDocument doc = parse_svg_subset(svg);
        REQUIRE(doc.texts.size() == 1);
        CHECK(doc.texts[0] == "hello");
        CHECK(rasterize_svg_subset(svg) == Bitmap::filled(4, 3, Color::white()));
    }
    SUBCASE("constructs outside the subset are named") {
        try {
            rasterize_svg_subset(svg_doc("<path d=\"M0 0L1 1\"/>"));
            FAIL("expected UnsupportedSvg");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnsupportedSvg);
            CHECK(std::string(e.what()).find("path") != std::string::npos);
        }
        CHECK(code_of([] { parse_svg_subset(svg_doc("<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"red\"/>")); }) ==
              ErrorCode::UnsupportedSvg);
        CHECK(code_of([] {
                  parse_svg_subset(svg_doc("<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"#000000\" opacity=\"0.5\"/>"));
              }) == ErrorCode::UnsupportedSvg);
        CHECK(code_of([] { parse_svg_subset(svg_doc("<circle r=\"1\"/>")); }) == ErrorCode::UnsupportedSvg);
        CHECK(code_of([] { parse_svg_subset("<html></html>"); }) == ErrorCode::UnsupportedSvg);
        CHECK(code_of([] {
                  parse_svg_subset(svg_doc("<rect x=\"0.5\" y=\"0\" width=\"1\" height=\"1\" fill=\"#000000\"/>"));
              }) == ErrorCode::UnsupportedSvg);
    }
    SUBCASE("syntax errors are malformed") {
        CHECK(code_of([] { parse_svg_subset("<svg width=\"2\" height=\"2\">"); }) == ErrorCode::MalformedSvg);
        CHECK(code_of([] { parse_svg_subset(""); }) == ErrorCode::MalformedSvg);
        CHECK(code_of([] { parse_svg_subset(svg_doc("<rect x=\"0\" y=\"0\" width=\"1\"")); }) ==
              ErrorCode::MalformedSvg);
    }
}

TEST_CASE("template names") {
    for (Template t : kAllTemplates) CHECK(parse_template(template_name(t)) == t);
    CHECK(code_of([] { parse_template("gradient"); }) == ErrorCode::UnknownTemplate);
}

TEST_CASE("generate is a pure function of template and seed") {
    for (Template t : kAllTemplates) {
        for (std::uint64_t seed : {0ull, 1ull, 77ull, 0xffffffffffffffffull}) {
            const DatasetItem a = generate(t, seed);
            const DatasetItem b = generate(t, seed);
            CHECK(a.markup == b.markup);
            CHECK(a.svg == b.svg);
            CHECK(a.variables == b.variables);
            CHECK(a.item_id == make_item_id(t, seed));
            CHECK_FALSE(a.markup.empty());
            CHECK_FALSE(a.svg.empty());
        }
    }
    CHECK(generate(Template::Color, 1).svg != generate(Template::Color, 2).svg);
    CHECK(make_item_id(Template::Size, 255) == "size-00000000000000ff");
}

TEST_CASE("color items carry one full-canvas rect matching the markup variable") {
    const std::regex rect_re("<rect ([^>]*)/>");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const DatasetItem item = generate(Template::Color, seed);
        const std::string color = item.variable("background_color");
        CHECK(std::regex_match(color, std::regex("#[0-9a-f]{6}")));
        CHECK(item.markup.find("--background-color: " + color + ";") != std::string::npos);
        const auto n = std::distance(std::sregex_iterator(item.svg.begin(), item.svg.end(), rect_re),
                                     std::sregex_iterator());
        CHECK(n == 1);
        const SvgDocument doc = parse_svg_subset(item.svg);
        REQUIRE(doc.scene.rects.size() == 1);
        CHECK(doc.scene.rects[0] == SceneRect{0, 0, kDesktopWidth, kDesktopHeight, *Rgb8::parse_hex(color)});
        REQUIRE(item.scene.has_value());
        CHECK(doc.scene == *item.scene);
    }
}

TEST_CASE("size items translate percentages to pixels") {
    for (std::uint64_t seed : {3ull, 14ull, 159ull}) {
        const DatasetItem item = generate(Template::Size, seed);
        const int wp = std::stoi(item.variable("box_width_percent"));
        const int hp = std::stoi(item.variable("box_height_percent"));
        CHECK(wp >= 1);
        CHECK(wp <= 100);
        CHECK(hp >= 1);
        CHECK(hp <= 100);
        // round(p * W / 100) with halves rounded up, evaluated in floating point.
        const auto expected_w = static_cast<std::int64_t>(std::floor(wp * 1280.0 / 100.0 + 0.5));
        const auto expected_h = static_cast<std::int64_t>(std::floor(hp * 800.0 / 100.0 + 0.5));
        const SvgDocument doc = parse_svg_subset(item.svg);
        REQUIRE(doc.scene.rects.size() == 2);
        CHECK(doc.scene.rects[1].width == expected_w);
        CHECK(doc.scene.rects[1].height == expected_h);
        CHECK(item.markup.find("--box-width: " + std::to_string(wp) + "%;") != std::string::npos);
    }
}

TEST_CASE("variable ranges hold across many seeds") {
    const std::regex hex("#[0-9a-f]{6}");
    std::set<std::string> words(word_list().begin(), word_list().end());
    CHECK(words.size() == 1000);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        for (Template t : kAllTemplates) {
            const DatasetItem item = generate(t, seed);
            for (const auto& [k, v] : item.variables) {
                if (k.find("color") != std::string::npos && k != "source_template")
                    CHECK(std::regex_match(v, hex));
                if (k.find("percent") != std::string::npos) {
                    CHECK(std::stoi(v) >= 1);
                    CHECK(std::stoi(v) <= 100);
                }
                if (k == "font_size") {
                    CHECK(std::stoi(v) >= 12);
                    CHECK(std::stoi(v) <= 72);
                }
                if (k == "word") CHECK(words.contains(v));
            }
            // The parser accepts everything the generator emits.
            CHECK_NOTHROW(parse_svg_subset(item.svg));
            if (item.mobile_svg) CHECK_NOTHROW(parse_svg_subset(*item.mobile_svg));
        }
    }
}

TEST_CASE("scene presence by template") {
    CHECK(generate(Template::Color, 5).scene.has_value());
    CHECK(generate(Template::Size, 5).scene.has_value());
    const DatasetItem responsive = generate(Template::ColorResponsive, 5);
    CHECK(responsive.scene.has_value());
    REQUIRE(responsive.mobile_scene.has_value());
    CHECK(responsive.mobile_scene->width == kMobileWidth);
    CHECK(responsive.mobile_scene->height == kMobileHeight);
    CHECK(responsive.markup.find("@media (max-width: 600px)") != std::string::npos);
    CHECK_FALSE(generate(Template::ColorText, 5).scene.has_value());
    CHECK_FALSE(generate(Template::ColorTextSize, 5).scene.has_value());
}

TEST_CASE("combined draws from the four simple templates") {
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const DatasetItem item = generate(Template::Combined, seed);
        const std::string& source = item.variable("source_template");
        seen.insert(source);
        CHECK(item.variables.front().first == "source_template");
        CHECK(item.scene.has_value() == (source == "color" || source == "size"));
    }
    CHECK(seen == std::set<std::string>{"color", "size", "color_text", "color_text_size"});
}

TEST_CASE("closed loop holds for every template") {
    for (Template t : kAllTemplates) {
        const ClosedLoopReport report = verify_closed_loop(t, 30, 1000);
        CHECK(report.checked == 30);
        CHECK(report.passed == 30);
        CHECK(report.failures.empty());
        CHECK(report.min_msps == 1.0);
    }
    // Size rasters are bit-identical, not just equal under the metric.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DatasetItem item = generate(Template::Size, seed);
        CHECK(rasterize_svg_subset(item.svg) == rasterize(*item.scene));
    }
}

TEST_CASE("markup text content") {
    const DatasetItem item = generate(Template::ColorText, 9);
    const auto texts = markup_text_content(item.markup);
    REQUIRE(texts.size() == 1);
    CHECK(texts[0] == item.variable("word"));
    CHECK(markup_text_content("<html><body> <p>a</p> b </body></html>") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("token counters") {
    CHECK(count_proxy_tokens("") == 0);
    CHECK(count_proxy_tokens("hello world") == 2);
    CHECK(count_proxy_tokens("<a href=\"x\">") == 8);  // < a href = " x " >
    CHECK(count_proxy_tokens("#ff00aa;") == 3);
    CHECK(count_whitespace_tokens("  a b\tc\n") == 3);
    CHECK(count_whitespace_tokens("<a href=\"x\">") == 2);
    CHECK(code_of([] { token_counter("bert"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("median and summaries") {
    CHECK(median_count({}) == 0);
    CHECK(median_count({1, 2, 30}) == 2);
    CHECK(median_count({4, 1}) == 2);  // floor of the mean of the middle pair
    CHECK(median_count({1, 2, 3, 10}) == 2);
    const DatasetStats s = summarize_counts({1, 2, 30});
    CHECK(s.items == 3);
    CHECK(s.total_tokens == 33);
    CHECK(s.median_tokens_per_item == 2);
    CHECK(summarize_counts({}) == DatasetStats{});
}

TEST_CASE("generate_dataset writes payloads and manifest") {
    msps::test::TempDir dir;
    const DatasetStats stats = generate_dataset(Template::Color, 4, 10, dir.path());
    CHECK(stats.items == 4);
    std::size_t html = 0, svg = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
        html += e.path().extension() == ".html";
        svg += e.path().extension() == ".svg";
    }
    CHECK(html == 4);
    CHECK(svg == 4);
    const std::string manifest = read_file(dir / "manifest.jsonl");
    CHECK(std::count(manifest.begin(), manifest.end(), '\n') == 4);

    std::vector<std::uint64_t> recount;
    std::istringstream lines(manifest);
    std::uint64_t expected_seed = 10;
    for (std::string line; std::getline(lines, line);) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j["seed"] == expected_seed);
        CHECK(j["item_id"] == make_item_id(Template::Color, expected_seed));
        CHECK(j["template"] == "color");
        const std::string id = j["item_id"];
        const std::uint64_t n =
            count_proxy_tokens(read_file(dir / (id + ".html"))) + count_proxy_tokens(read_file(dir / (id + ".svg")));
        CHECK(j["token_count"] == n);
        recount.push_back(n);
        ++expected_seed;
    }
    CHECK(stats == summarize_counts(recount));
}

TEST_CASE("generate_dataset is reproducible and worker-independent") {
    msps::test::TempDir a, b;
    generate_dataset(Template::Combined, 40, 5, a.path(), count_proxy_tokens, 1);
    generate_dataset(Template::Combined, 40, 5, b.path(), count_proxy_tokens, 6);
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(a.path())) names.push_back(e.path().filename());
    std::size_t b_count = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(b.path())) ++b_count;
    CHECK(names.size() == b_count);
    for (const auto& name : names) CHECK(read_file(a / name) == read_file(b / name));
}

TEST_CASE("responsive items write a mobile svg") {
    msps::test::TempDir dir;
    generate_dataset(Template::ColorResponsive, 2, 0, dir.path());
    const std::string id = make_item_id(Template::ColorResponsive, 1);
    CHECK(std::filesystem::exists(dir / (id + ".mobile.svg")));
    const auto line = nlohmann::json::parse(read_file(dir / "manifest.jsonl").substr(0, read_file(dir / "manifest.jsonl").find('\n')));
    CHECK(line["files"].size() == 3);
}

TEST_CASE("generate_dataset validation") {
    msps::test::TempDir dir;
    CHECK(code_of([&] { generate_dataset(Template::Color, 0, 0, dir.path()); }) == ErrorCode::InvalidArgument);
    msps::test::write_file(dir / "blocker", "x");
    CHECK(code_of([&] { generate_dataset(Template::Color, 1, 0, dir / "blocker" / "sub"); }) == ErrorCode::Io);
}
