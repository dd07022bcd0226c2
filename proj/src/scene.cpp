// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/scene.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <limits>

#include "msps/error.hpp"

namespace msps {

std::string Rgb8::hex() const {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

std::optional<Rgb8> Rgb8::parse_hex(std::string_view text) {
    if (text.size() != 7 || text[0] != '#') return std::nullopt;
    std::uint8_t parts[3];
    for (int i = 0; i < 3; ++i) {
        const char* first = text.data() + 1 + 2 * i;
        if (!std::isxdigit(static_cast<unsigned char>(first[0])) ||
            !std::isxdigit(static_cast<unsigned char>(first[1])))
            return std::nullopt;
        std::from_chars(first, first + 2, parts[i], 16);
    }
    return Rgb8{parts[0], parts[1], parts[2]};
}

void SceneSpec::validate() const {
    if (width == 0 || height == 0)
        throw Error(ErrorCode::InvalidArgument, "scene canvas must be at least 1x1");
    for (const auto& r : rects)
        if (r.width < 1 || r.height < 1)
            throw Error(ErrorCode::InvalidArgument, "scene rect must be at least 1x1");
}

Bitmap rasterize(const SceneSpec& scene) {
    scene.validate();
    const std::size_t w = scene.width;
    const std::size_t h = scene.height;
    std::vector<double> values(w * h * 3);
    auto paint = [&](std::size_t x0, std::size_t y0, std::size_t x1, std::size_t y1, Rgb8 c) {
        const Color f = c.to_color();
        for (std::size_t y = y0; y < y1; ++y) {
            double* row = values.data() + y * w * 3;
            for (std::size_t x = x0; x < x1; ++x) {
                row[3 * x] = f.r;
                row[3 * x + 1] = f.g;
                row[3 * x + 2] = f.b;
            }
        }
    };
    paint(0, 0, w, h, scene.background);
    for (const auto& r : scene.rects) {
        const auto clip = [](std::int64_t v, std::size_t hi) {
            return static_cast<std::size_t>(std::clamp<std::int64_t>(v, 0, static_cast<std::int64_t>(hi)));
        };
        // Saturating right/bottom edge so huge rects cannot overflow.
        const std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
        const std::int64_t right = r.x > kMax - r.width ? kMax : r.x + r.width;
        const std::int64_t bottom = r.y > kMax - r.height ? kMax : r.y + r.height;
        const std::size_t x0 = clip(r.x, w), x1 = clip(right, w);
        const std::size_t y0 = clip(r.y, h), y1 = clip(bottom, h);
        if (x0 < x1 && y0 < y1) paint(x0, y0, x1, y1, r.fill);
    }
    // Every value is an 8-bit sample over 255.
    return Bitmap(Bitmap::Trusted{}, static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h), 3,
                  std::move(values));
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorCode::MalformedSvg, "malformed SVG: " + what);
}

[[noreturn]] void unsupported(const std::string& what) {
    throw Error(ErrorCode::UnsupportedSvg, "unsupported SVG feature: " + what);
}

std::int64_t parse_int(std::string_view element, std::string_view attr, std::string_view text) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        unsupported("non-integer value '" + std::string(text) + "' for <" + std::string(element) +
                    "> attribute '" + std::string(attr) + "'");
    return v;
}

std::string decode_entities(std::string_view text) {
    static const std::pair<std::string_view, char> kEntities[] = {
        {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
    std::string out;
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        bool matched = false;
        for (const auto& [name, ch] : kEntities) {
            if (text.substr(i, name.size()) == name) {
                out.push_back(ch);
                i += name.size();
                matched = true;
                break;
            }
        }
        if (!matched) unsupported("character reference in text");
    }
    return out;
}

struct Tag {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    bool closing = false;
    bool self_closing = false;
};

class SvgReader {
public:
    explicit SvgReader(std::string_view src) : src_(src) {}

    SvgDocument read() {
        skip_misc(true);
        if (at_end()) malformed("empty document");
        Tag root = read_tag();
        if (root.closing) malformed("unexpected closing tag </" + root.name + ">");
        if (root.name != "svg") unsupported("root element <" + root.name + ">");
        read_root_attrs(root);
        if (!root.self_closing) read_children("svg");
        skip_misc(false);
        if (!at_end()) malformed("content after the root element");
        return std::move(doc_);
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    void skip_misc(bool allow_prolog) {
        for (;;) {
            skip_space();
            if (allow_prolog && starts_with("<?xml")) {
                const auto end = src_.find("?>", pos_);
                if (end == std::string_view::npos) malformed("unterminated XML declaration");
                pos_ = end + 2;
                allow_prolog = false;
            } else if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<!")) {
                unsupported("markup declaration (DOCTYPE/CDATA)");
            } else if (starts_with("<?")) {
                unsupported("processing instruction");
            } else {
                return;
            }
        }
    }

    void skip_comment() {
        const auto end = src_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) malformed("unterminated comment");
        pos_ = end + 3;
    }

    std::string read_name() {
        const std::size_t start = pos_;
        while (!at_end()) {
            const char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == ':' || c == '_' || c == '.')
                ++pos_;
            else
                break;
        }
        if (start == pos_) malformed("expected a name at offset " + std::to_string(start));
        return std::string(src_.substr(start, pos_ - start));
    }

    Tag read_tag() {
        if (at_end() || src_[pos_] != '<') malformed("expected '<' at offset " + std::to_string(pos_));
        ++pos_;
        Tag tag;
        if (!at_end() && src_[pos_] == '/') {
            tag.closing = true;
            ++pos_;
        }
        tag.name = read_name();
        for (;;) {
            skip_space();
            if (at_end()) malformed("unterminated tag <" + tag.name + ">");
            if (src_[pos_] == '>') {
                ++pos_;
                return tag;
            }
            if (starts_with("/>")) {
                if (tag.closing) malformed("malformed closing tag </" + tag.name + ">");
                tag.self_closing = true;
                pos_ += 2;
                return tag;
            }
            if (tag.closing) malformed("attributes on closing tag </" + tag.name + ">");
            std::string key = read_name();
            skip_space();
            if (at_end() || src_[pos_] != '=') malformed("attribute '" + key + "' has no value");
            ++pos_;
            skip_space();
            if (at_end() || (src_[pos_] != '"' && src_[pos_] != '\'')) malformed("unquoted attribute '" + key + "'");
            const char quote = src_[pos_++];
            const auto end = src_.find(quote, pos_);
            if (end == std::string_view::npos) malformed("unterminated attribute '" + key + "'");
            std::string value(src_.substr(pos_, end - pos_));
            pos_ = end + 1;
            for (const auto& [k, v] : tag.attrs)
                if (k == key) malformed("duplicate attribute '" + key + "'");
            tag.attrs.emplace_back(std::move(key), std::move(value));
        }
    }

    // Character data up to the next '<'.
    std::string_view read_text() {
        const std::size_t start = pos_;
        const auto end = src_.find('<', pos_);
        pos_ = end == std::string_view::npos ? src_.size() : end;
        return src_.substr(start, pos_ - start);
    }

    void read_root_attrs(const Tag& tag) {
        std::optional<std::int64_t> width, height;
        std::optional<std::string> view_box;
        for (const auto& [k, v] : tag.attrs) {
            if (k == "xmlns") {
                if (v != "http://www.w3.org/2000/svg") unsupported("namespace '" + v + "'");
            } else if (k == "width") {
                width = parse_int("svg", k, v);
            } else if (k == "height") {
                height = parse_int("svg", k, v);
            } else if (k == "viewBox") {
                view_box = v;
            } else {
                unsupported("<svg> attribute '" + k + "'");
            }
        }
        if (!width || !height) unsupported("<svg> without integer width and height");
        if (*width < 1 || *height < 1 || *width > std::numeric_limits<std::uint32_t>::max() ||
            *height > std::numeric_limits<std::uint32_t>::max())
            malformed("canvas size out of range");
        if (*width * *height > (std::int64_t{1} << 28)) unsupported("canvas larger than 2^28 pixels");
        if (view_box && *view_box != "0 0 " + std::to_string(*width) + " " + std::to_string(*height))
            unsupported("viewBox '" + *view_box + "' that does not match width and height");
        doc_.scene.width = static_cast<std::uint32_t>(*width);
        doc_.scene.height = static_cast<std::uint32_t>(*height);
        doc_.scene.background = Rgb8{255, 255, 255};
    }

    void read_rect(const Tag& tag) {
        SceneRect rect;
        bool has_w = false, has_h = false, has_fill = false;
        for (const auto& [k, v] : tag.attrs) {
            if (k == "x") {
                rect.x = parse_int("rect", k, v);
            } else if (k == "y") {
                rect.y = parse_int("rect", k, v);
            } else if (k == "width") {
                rect.width = parse_int("rect", k, v);
                has_w = true;
            } else if (k == "height") {
                rect.height = parse_int("rect", k, v);
                has_h = true;
            } else if (k == "fill") {
                const auto c = Rgb8::parse_hex(v);
                if (!c) unsupported("fill value '" + v + "' (only #rrggbb is supported)");
                rect.fill = *c;
                has_fill = true;
            } else {
                unsupported("<rect> attribute '" + k + "'");
            }
        }
        if (!has_w || !has_h) malformed("<rect> without width and height");
        if (!has_fill) unsupported("<rect> without an explicit fill");
        if (rect.width < 1 || rect.height < 1) malformed("<rect> with non-positive size");
        doc_.scene.rects.push_back(rect);
    }

    void read_text_element(const Tag& tag) {
        static const char* const kAllowed[] = {"x", "y", "font-family", "font-size", "fill",
                                               "text-anchor", "dominant-baseline"};
        for (const auto& [k, v] : tag.attrs) {
            if (std::find(std::begin(kAllowed), std::end(kAllowed), k) == std::end(kAllowed))
                unsupported("<text> attribute '" + k + "'");
        }
        if (tag.self_closing) {
            doc_.texts.emplace_back();
            return;
        }
        std::string content = decode_entities(read_text());
        if (at_end()) malformed("unterminated <text>");
        if (starts_with("<!--")) unsupported("comment inside <text>");
        const Tag end = read_tag();
        if (!end.closing) unsupported("element <" + end.name + "> inside <text>");
        if (end.name != "text") malformed("mismatched </" + end.name + "> inside <text>");
        doc_.texts.push_back(std::move(content));
    }

    void read_children(const std::string& parent) {
        for (;;) {
            const std::string_view text = read_text();
            for (char c : text)
                if (!std::isspace(static_cast<unsigned char>(c)))
                    unsupported("character data inside <" + parent + ">");
            if (at_end()) malformed("unterminated <" + parent + ">");
            if (starts_with("<!--")) {
                skip_comment();
                continue;
            }
            if (starts_with("<!") || starts_with("<?")) unsupported("markup declaration inside <" + parent + ">");
            const Tag tag = read_tag();
            if (tag.closing) {
                if (tag.name != parent) malformed("mismatched </" + tag.name + ">, expected </" + parent + ">");
                return;
            }
            if (tag.name == "rect") {
                read_rect(tag);
                if (!tag.self_closing) {
                    const Tag end = read_tag();
                    if (!end.closing || end.name != "rect") unsupported("content inside <rect>");
                }
            } else if (tag.name == "g") {
                if (!tag.attrs.empty()) unsupported("<g> attribute '" + tag.attrs.front().first + "'");
                if (!tag.self_closing) read_children("g");
            } else if (tag.name == "text") {
                read_text_element(tag);
            } else {
                unsupported("element <" + tag.name + ">");
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    SvgDocument doc_;
};

}  // namespace

SvgDocument parse_svg_subset(std::string_view svg) { return SvgReader(svg).read(); }

Bitmap rasterize_svg_subset(std::string_view svg) { return rasterize(parse_svg_subset(svg).scene); }

}  // namespace msps
