// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "msps/error.hpp"
#include "msps/png_io.hpp"
#include "test_support.hpp"

using namespace msps;
using Bytes = std::vector<std::uint8_t>;

namespace {

// Minimal independent PNG writer for test fixtures: one IDAT, filter 0 on
// every row, arbitrary header fields so unsupported variants can be built.
void put_u32(Bytes& out, std::uint32_t v) {
    for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_chunk(Bytes& out, const char* type, const Bytes& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    Bytes body(type, type + 4);
    body.insert(body.end(), data.begin(), data.end());
    out.insert(out.end(), body.begin(), body.end());
    put_u32(out, static_cast<std::uint32_t>(crc32(0, body.data(), static_cast<uInt>(body.size()))));
}

Bytes make_png(std::uint32_t w, std::uint32_t h, std::uint8_t depth, std::uint8_t color_type,
               const Bytes& raw_rows, std::uint8_t interlace = 0, const Bytes* plte = nullptr) {
    Bytes out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    Bytes ihdr;
    put_u32(ihdr, w);
    put_u32(ihdr, h);
    ihdr.insert(ihdr.end(), {depth, color_type, 0, 0, interlace});
    put_chunk(out, "IHDR", ihdr);
    if (plte) put_chunk(out, "PLTE", *plte);
    uLongf len = compressBound(static_cast<uLong>(raw_rows.size()));
    Bytes z(len);
    REQUIRE(compress(z.data(), &len, raw_rows.data(), static_cast<uLong>(raw_rows.size())) == Z_OK);
    z.resize(len);
    put_chunk(out, "IDAT", z);
    put_chunk(out, "IEND", {});
    return out;
}

ErrorCode decode_error(const Bytes& png) {
    try {
        decode_png(png);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected decode failure");
    return ErrorCode::Parse;
}

}  // namespace

TEST_CASE("8-bit RGB scales by 255") {
    const Bitmap b = decode_png(make_png(1, 1, 8, 2, {0, 255, 0, 128}));
    REQUIRE(b.channels() == 3);
    CHECK(b.at(0, 0, 0) == 1.0);
    CHECK(b.at(0, 0, 1) == 0.0);
    CHECK(b.at(0, 0, 2) == 128.0 / 255.0);
}

TEST_CASE("8-bit grayscale stays single-channel") {
    const Bitmap b = decode_png(make_png(3, 1, 8, 0, {0, 0, 51, 255}));
    REQUIRE(b.channels() == 1);
    CHECK(b.at(1, 0, 0) == 51.0 / 255.0);
    CHECK(b.at(2, 0, 0) == 1.0);
}

TEST_CASE("16-bit samples scale by 65535") {
    const Bitmap rgb = decode_png(make_png(1, 1, 16, 2, {0, 0xff, 0xff, 0x80, 0x00, 0x00, 0x01}));
    CHECK(rgb.at(0, 0, 0) == 1.0);
    CHECK(rgb.at(0, 0, 1) == 32768.0 / 65535.0);
    CHECK(rgb.at(0, 0, 2) == 1.0 / 65535.0);
    const Bitmap g = decode_png(make_png(1, 1, 16, 0, {0, 0x12, 0x34}));
    CHECK(g.at(0, 0, 0) == 0x1234 / 65535.0);
}

TEST_CASE("alpha is composited over the background") {
    SUBCASE("fully transparent shows the background") {
        const Bitmap b = decode_png(make_png(1, 1, 8, 6, {0, 0, 0, 0, 0}));
        for (std::uint32_t c = 0; c < 3; ++c) CHECK(b.at(0, 0, c) == 1.0);
    }
    SUBCASE("half alpha over white") {
        const Bitmap b = decode_png(make_png(1, 1, 8, 6, {0, 0, 0, 0, 128}));
        // Source-over: 0 * a + 1 * (1 - a) with a = 128/255.
        for (std::uint32_t c = 0; c < 3; ++c) CHECK(std::abs(b.at(0, 0, c) - 127.0 / 255.0) <= 1.0 / 255.0);
    }
    SUBCASE("custom background") {
        const Bitmap b = decode_png(make_png(1, 1, 8, 6, {0, 255, 255, 255, 0}), Color{0.0, 0.5, 1.0});
        CHECK(b.at(0, 0, 0) == 0.0);
        CHECK(b.at(0, 0, 1) == 0.5);
        CHECK(b.at(0, 0, 2) == 1.0);
    }
    SUBCASE("opaque pixels are untouched") {
        const Bitmap b = decode_png(make_png(1, 1, 8, 6, {0, 10, 20, 30, 255}), Color::black());
        CHECK(b.at(0, 0, 0) == 10.0 / 255.0);
        CHECK(b.at(0, 0, 2) == 30.0 / 255.0);
    }
    SUBCASE("gray+alpha") {
        const Bitmap b = decode_png(make_png(1, 1, 8, 4, {0, 0, 0}));
        REQUIRE(b.channels() == 1);
        CHECK(b.at(0, 0, 0) == 1.0);
    }
    SUBCASE("16-bit RGBA") {
        const Bitmap b = decode_png(make_png(1, 1, 16, 6, {0, 0xff, 0xff, 0, 0, 0, 0, 0xff, 0xff}));
        CHECK(b.at(0, 0, 0) == 1.0);
        CHECK(b.at(0, 0, 1) == 0.0);
    }
}

TEST_CASE("row filters are undone") {
    // Two rows of 2 gray pixels: row 0 with Sub, row 1 with Paeth.
    // Row 0 raw [10, 30] -> Sub bytes [10, 20].
    // Row 1 raw [15, 40]: Paeth predictor for x=0 is up (10), for x=1 picks
    // among a=15, b=30, c=10 -> p=35, nearest is b=30.
    const Bitmap b = decode_png(make_png(2, 2, 8, 0, {1, 10, 20, 4, 5, 10}));
    CHECK(b.at(0, 0, 0) == 10.0 / 255.0);
    CHECK(b.at(1, 0, 0) == 30.0 / 255.0);
    CHECK(b.at(0, 1, 0) == 15.0 / 255.0);
    CHECK(b.at(1, 1, 0) == 40.0 / 255.0);
}

TEST_CASE("unsupported and malformed inputs are distinct errors") {
    const Bytes plte = {0, 0, 0, 255, 255, 255};
    CHECK(decode_error(make_png(1, 1, 8, 3, {0, 0}, 0, &plte)) == ErrorCode::UnsupportedPng);
    CHECK(decode_error(make_png(8, 1, 1, 0, {0, 0xff})) == ErrorCode::UnsupportedPng);
    CHECK(decode_error(make_png(1, 1, 8, 0, {0, 0}, 1)) == ErrorCode::UnsupportedPng);

    Bytes bad_crc = make_png(1, 1, 8, 0, {0, 7});
    bad_crc[29] ^= 0x01;  // inside IHDR's CRC
    CHECK(decode_error(bad_crc) == ErrorCode::MalformedPng);

    Bytes truncated = make_png(4, 4, 8, 2, Bytes(4 * (1 + 12), 0));
    truncated.resize(truncated.size() - 20);
    CHECK(decode_error(truncated) == ErrorCode::MalformedPng);

    CHECK(decode_error({'n', 'o', 't', 'p', 'n', 'g'}) == ErrorCode::MalformedPng);
    // Too little image data for the declared size.
    CHECK(decode_error(make_png(4, 4, 8, 0, {0, 1, 2, 3, 4})) == ErrorCode::MalformedPng);
    // Unknown filter type.
    CHECK(decode_error(make_png(1, 1, 8, 0, {9, 0})) == ErrorCode::MalformedPng);
}

TEST_CASE("load_png reports missing files") {
    msps::test::TempDir dir;
    try {
        load_png(dir / "absent.png");
        FAIL("expected FileNotFound");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FileNotFound);
    }
}

TEST_CASE("save_png quantizes with round half up") {
    msps::test::TempDir dir;
    save_png(Bitmap::filled(4, 4, 1, 0.5), dir / "half.png");
    const Bitmap half = load_png(dir / "half.png");
    for (double v : half.values()) CHECK(v == 128.0 / 255.0);

    save_png(Bitmap::filled(3, 2, 3, 0.0), dir / "zeros.png");
    const Bitmap zeros = load_png(dir / "zeros.png");
    CHECK(zeros.channels() == 3);
    for (double v : zeros.values()) CHECK(v == 0.0);

    CHECK(quantize_8bit(0.0) == 0);
    CHECK(quantize_8bit(1.0) == 255);
    CHECK(quantize_8bit(127.5 / 255.0) == 128);
}

TEST_CASE("save then load stays within half a quantization step") {
    msps::test::TempDir dir;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t c = trial % 2 ? 3 : 1;
        const Bitmap b = msps::test::random_bitmap(rng, 1 + trial * 3, 1 + trial * 2, c);
        const auto path = dir / ("rt" + std::to_string(trial) + ".png");
        save_png(b, path);
        const Bitmap back = load_png(path);
        REQUIRE(back.same_shape(b));
        CHECK(msps::test::max_abs_diff(back, b) <= 1.0 / 510.0 + 1e-15);
    }
}

TEST_CASE("save_png to an unwritable path fails with Io") {
    msps::test::TempDir dir;
    try {
        save_png(Bitmap::filled(1, 1, 1, 0.0), dir / "missing-dir" / "x.png");
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
}

TEST_CASE("PngRowReader yields the same rows as decode_png") {
    std::mt19937_64 rng(31);
    for (std::uint32_t c : {1u, 3u}) {
        const Bitmap src = msps::test::random_bitmap(rng, 13, 9, c);
        const Bytes png = encode_png(src);
        const Bitmap whole = decode_png(png);
        PngRowReader reader(png);
        CHECK(reader.width() == 13);
        CHECK(reader.height() == 9);
        CHECK(reader.channels() == c);
        std::span<const double> previous;
        for (std::uint32_t y = 0; y < 9; ++y) {
            const auto row = reader.next_row();
            REQUIRE(row.size() == 13 * c);
            CHECK(std::equal(row.begin(), row.end(), whole.row(y).begin()));
            // The previous row is still intact.
            if (y > 0) CHECK(std::equal(previous.begin(), previous.end(), whole.row(y - 1).begin()));
            previous = row;
        }
        CHECK(reader.rows_read() == 9);
        try {
            reader.next_row();
            FAIL("expected InvalidArgument past the last row");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::InvalidArgument);
        }
    }
}

TEST_CASE("PngRowReader reports damage at the row where it shows up") {
    // Extra data after the last scanline surfaces when the last row is read.
    PngRowReader reader(make_png(1, 2, 8, 0, {0, 1, 0, 2, 0, 3}));
    CHECK(reader.next_row()[0] == 1.0 / 255.0);
    try {
        reader.next_row();
        FAIL("expected MalformedPng on the last row");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedPng);
    }
}

TEST_CASE("PngRowReader::open prefixes errors with the path") {
    msps::test::TempDir dir;
    const auto path = dir / "bad.png";
    msps::test::write_file(path, std::string(20, 'x'));
    try {
        PngRowReader::open(path);
        FAIL("expected MalformedPng");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedPng);
        CHECK(std::string(e.what()).rfind(path.string() + ": ", 0) == 0);
    }
}
