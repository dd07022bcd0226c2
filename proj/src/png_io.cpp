// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/png_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "msps/error.hpp"

namespace msps {
namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

enum ColorType : std::uint8_t {
    kGray = 0,
    kRgb = 2,
    kPalette = 3,
    kGrayAlpha = 4,
    kRgba = 6,
};

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorCode::MalformedPng, "malformed PNG: " + what);
}

[[noreturn]] void unsupported(const std::string& what) {
    throw Error(ErrorCode::UnsupportedPng, "unsupported PNG: " + what);
}

std::uint32_t read_be32(const std::uint8_t* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
           (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

struct Header {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t bit_depth = 0;
    std::uint8_t color_type = 0;
    std::uint8_t interlace = 0;
};

std::uint32_t samples_per_pixel(std::uint8_t color_type) {
    switch (color_type) {
        case kGray: return 1;
        case kGrayAlpha: return 2;
        case kRgb: return 3;
        case kRgba: return 4;
        default: return 0;
    }
}

// Streams the concatenated IDAT payload one scanline at a time.
class Inflater {
public:
    explicit Inflater(const std::vector<std::uint8_t>& compressed) {
        if (inflateInit(&zs_) != Z_OK) malformed("zlib init failed");
        zs_.next_in = const_cast<Bytef*>(compressed.data());
        zs_.avail_in = static_cast<uInt>(compressed.size());
    }
    ~Inflater() { inflateEnd(&zs_); }
    Inflater(const Inflater&) = delete;
    Inflater& operator=(const Inflater&) = delete;

    // Fills exactly n bytes.
    void read(std::uint8_t* dst, std::size_t n) {
        zs_.next_out = dst;
        zs_.avail_out = static_cast<uInt>(n);
        while (zs_.avail_out > 0) {
            const int rc = inflate(&zs_, Z_NO_FLUSH);
            if (rc == Z_STREAM_END && zs_.avail_out > 0) malformed("image data size does not match header");
            if (rc != Z_OK && rc != Z_STREAM_END) malformed("corrupt or truncated image data");
        }
    }

    // The stream must end exactly after the last scanline.
    void finish() {
        std::uint8_t extra = 0;
        zs_.next_out = &extra;
        zs_.avail_out = 1;
        const int rc = inflate(&zs_, Z_FINISH);
        if (rc != Z_STREAM_END) {
            if (zs_.avail_out == 0) malformed("image data size does not match header");
            malformed("corrupt or truncated image data");
        }
        if (zs_.avail_out == 0) malformed("image data size does not match header");
    }

private:
    z_stream zs_{};
};

std::uint8_t paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a);
    const int pb = std::abs(p - b);
    const int pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
    if (pb <= pc) return static_cast<std::uint8_t>(b);
    return static_cast<std::uint8_t>(c);
}

// Reverses one scanline filter. prev is the previous unfiltered row (zeros
// for the first row).
void unfilter_row(std::uint8_t filter, const std::uint8_t* src, const std::uint8_t* prev,
                  std::uint8_t* cur, std::size_t stride, std::size_t bpp) {
    const std::size_t lead = std::min(bpp, stride);
    switch (filter) {
        case 0:
            std::memcpy(cur, src, stride);
            break;
        case 1:
            std::memcpy(cur, src, lead);
            for (std::size_t i = bpp; i < stride; ++i)
                cur[i] = static_cast<std::uint8_t>(src[i] + cur[i - bpp]);
            break;
        case 2:
            for (std::size_t i = 0; i < stride; ++i) cur[i] = static_cast<std::uint8_t>(src[i] + prev[i]);
            break;
        case 3:
            for (std::size_t i = 0; i < lead; ++i) cur[i] = static_cast<std::uint8_t>(src[i] + prev[i] / 2);
            for (std::size_t i = bpp; i < stride; ++i)
                cur[i] = static_cast<std::uint8_t>(src[i] + (cur[i - bpp] + prev[i]) / 2);
            break;
        case 4:
            for (std::size_t i = 0; i < lead; ++i) cur[i] = static_cast<std::uint8_t>(src[i] + prev[i]);
            for (std::size_t i = bpp; i < stride; ++i)
                cur[i] = static_cast<std::uint8_t>(src[i] + paeth(cur[i - bpp], prev[i], prev[i - bpp]));
            break;
        default:
            malformed("unknown filter type " + std::to_string(filter));
    }
}

}  // namespace

struct PngRowReader::Impl {
    Header hdr;
    std::uint32_t spp = 0;
    std::size_t bpp = 0;
    std::size_t stride = 0;
    bool wide = false;
    bool gray = false;
    bool alpha = false;
    std::uint32_t out_channels = 0;
    double background[3] = {1.0, 1.0, 1.0};
    std::array<double, 256> lut8{};

    std::vector<std::uint8_t> idat;
    std::unique_ptr<Inflater> inflater;
    std::vector<std::uint8_t> scanline;
    std::vector<std::uint8_t> rows;  // two unfiltered rows, slot y % 2
    std::vector<std::uint8_t> zero_row;
    std::vector<double> lines;       // two converted rows, slot y % 2
    std::uint32_t next_y = 0;
    std::string context;             // prefix for error messages

    Impl(std::span<const std::uint8_t> bytes, Color bg);
    std::span<const double> next_row();
};

PngRowReader::Impl::Impl(std::span<const std::uint8_t> bytes, Color bg) {
    if (bytes.size() < kSignature.size() ||
        std::memcmp(bytes.data(), kSignature.data(), kSignature.size()) != 0)
        malformed("missing signature");

    bool have_header = false;
    bool have_end = false;
    std::size_t pos = kSignature.size();
    while (pos < bytes.size() && !have_end) {
        if (bytes.size() - pos < 12) malformed("truncated chunk");
        const std::uint32_t len = read_be32(bytes.data() + pos);
        if (len > bytes.size() - pos - 12) malformed("chunk length exceeds file");
        const std::uint8_t* type = bytes.data() + pos + 4;
        const std::uint8_t* data = type + 4;
        const std::uint32_t stored_crc = read_be32(data + len);
        if (crc32(crc32(0L, nullptr, 0), type, len + 4) != stored_crc) malformed("CRC mismatch");

        const std::string tag(reinterpret_cast<const char*>(type), 4);
        if (!have_header && tag != "IHDR") malformed("first chunk is not IHDR");
        if (tag == "IHDR") {
            if (have_header) malformed("duplicate IHDR");
            if (len != 13) malformed("bad IHDR length");
            hdr.width = read_be32(data);
            hdr.height = read_be32(data + 4);
            hdr.bit_depth = data[8];
            hdr.color_type = data[9];
            hdr.interlace = data[12];
            if (data[10] != 0 || data[11] != 0) malformed("unknown compression or filter method");
            have_header = true;
        } else if (tag == "IDAT") {
            idat.insert(idat.end(), data, data + len);
        } else if (tag == "IEND") {
            have_end = true;
        } else if ((type[0] & 0x20) == 0 && tag != "PLTE") {
            malformed("unknown critical chunk " + tag);
        }
        pos += 12 + std::size_t{len};
    }
    if (!have_header) malformed("no IHDR");
    if (!have_end) malformed("missing IEND");
    if (idat.empty()) malformed("no image data");
    if (hdr.width == 0 || hdr.height == 0) malformed("zero dimension");
    if (hdr.color_type == kPalette) unsupported("palette color type");
    spp = samples_per_pixel(hdr.color_type);
    if (spp == 0) malformed("invalid color type " + std::to_string(hdr.color_type));
    if (hdr.bit_depth != 8 && hdr.bit_depth != 16)
        unsupported("bit depth " + std::to_string(hdr.bit_depth));
    if (hdr.interlace == 1) unsupported("Adam7 interlacing");
    if (hdr.interlace > 1) malformed("invalid interlace method");

    bpp = spp * (hdr.bit_depth / 8);
    stride = bpp * hdr.width;
    if (stride / bpp != hdr.width || stride + 1 > SIZE_MAX / hdr.height) malformed("image too large");

    wide = hdr.bit_depth == 16;
    gray = hdr.color_type == kGray || hdr.color_type == kGrayAlpha;
    alpha = hdr.color_type == kGrayAlpha || hdr.color_type == kRgba;
    out_channels = gray ? 1 : 3;
    if (gray) {
        background[0] = bg.luma();
    } else {
        background[0] = bg.r;
        background[1] = bg.g;
        background[2] = bg.b;
    }
    for (int i = 0; i < 256; ++i) lut8[i] = i / 255.0;

    inflater = std::make_unique<Inflater>(idat);
    scanline.resize(stride + 1);
    rows.resize(2 * stride);
    zero_row.assign(stride, 0);
    lines.resize(2 * static_cast<std::size_t>(hdr.width) * out_channels);
}

std::span<const double> PngRowReader::Impl::next_row() {
    if (next_y >= hdr.height) throw Error(ErrorCode::InvalidArgument, "all rows already read");
    const std::uint32_t y = next_y++;
    inflater->read(scanline.data(), scanline.size());
    std::uint8_t* cur = rows.data() + (y % 2) * stride;
    const std::uint8_t* prev = y > 0 ? rows.data() + ((y + 1) % 2) * stride : zero_row.data();
    unfilter_row(scanline[0], scanline.data() + 1, prev, cur, stride, bpp);

    const std::size_t width = static_cast<std::size_t>(hdr.width) * out_channels;
    double* dst = lines.data() + (y % 2) * width;
    if (!alpha && !wide) {
        for (std::size_t i = 0; i < width; ++i) dst[i] = lut8[cur[i]];
    } else {
        auto sample = [&](std::size_t index) -> double {
            if (wide) return ((cur[2 * index] << 8) | cur[2 * index + 1]) / 65535.0;
            return lut8[cur[index]];
        };
        for (std::uint32_t x = 0; x < hdr.width; ++x) {
            const std::size_t base = static_cast<std::size_t>(x) * spp;
            const double a = alpha ? sample(base + spp - 1) : 1.0;
            for (std::uint32_t c = 0; c < out_channels; ++c) {
                const double v = sample(base + c);
                dst[x * out_channels + c] =
                    alpha ? std::clamp(a * v + (1.0 - a) * background[c], 0.0, 1.0) : v;
            }
        }
    }
    if (next_y == hdr.height) inflater->finish();
    return {dst, width};
}

namespace {

// Re-throws with the file name in front, keeping the code.
template <class Fn>
auto with_context(const std::string& context, Fn&& fn) {
    if (context.empty()) return fn();
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.code(), context + ": " + e.what());
    }
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw Error(ErrorCode::FileNotFound, "no such file: " + path.string());
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    const std::streamoff size = in.tellg();
    if (size < 0) throw Error(ErrorCode::Io, "cannot size " + path.string());
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    in.seekg(0);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), size))
        throw Error(ErrorCode::Io, "read failed: " + path.string());
    return bytes;
}

}  // namespace

PngRowReader::PngRowReader(std::span<const std::uint8_t> bytes, Color alpha_background)
    : impl_(std::make_unique<Impl>(bytes, alpha_background)) {}

PngRowReader PngRowReader::open(const std::filesystem::path& path, Color alpha_background) {
    const std::vector<std::uint8_t> bytes = read_file_bytes(path);
    PngRowReader reader = with_context(path.string(), [&] { return PngRowReader(bytes, alpha_background); });
    reader.impl_->context = path.string();
    return reader;
}

PngRowReader::PngRowReader(PngRowReader&&) noexcept = default;
PngRowReader& PngRowReader::operator=(PngRowReader&&) noexcept = default;
PngRowReader::~PngRowReader() = default;

std::uint32_t PngRowReader::width() const noexcept { return impl_->hdr.width; }
std::uint32_t PngRowReader::height() const noexcept { return impl_->hdr.height; }
std::uint32_t PngRowReader::channels() const noexcept { return impl_->out_channels; }
std::uint32_t PngRowReader::rows_read() const noexcept { return impl_->next_y; }

std::span<const double> PngRowReader::next_row() {
    return with_context(impl_->context, [&] { return impl_->next_row(); });
}

namespace {

Bitmap read_all_rows(PngRowReader& reader) {
    const std::size_t row_len = static_cast<std::size_t>(reader.width()) * reader.channels();
    std::vector<double> values;
    values.reserve(row_len * reader.height());
    for (std::uint32_t y = 0; y < reader.height(); ++y) {
        const auto row = reader.next_row();
        values.insert(values.end(), row.begin(), row.end());
    }
    // Samples are k / (2^depth - 1) and alpha blends are clamped, so every
    // value is already in [0, 1].
    return Bitmap(Bitmap::Trusted{}, reader.width(), reader.height(), reader.channels(),
                  std::move(values));
}

}  // namespace

Bitmap decode_png(std::span<const std::uint8_t> bytes, Color alpha_background) {
    PngRowReader reader(bytes, alpha_background);
    return read_all_rows(reader);
}

Bitmap load_png(const std::filesystem::path& path, Color alpha_background) {
    PngRowReader reader = PngRowReader::open(path, alpha_background);
    return read_all_rows(reader);
}

std::vector<std::uint8_t> encode_png(const Bitmap& bitmap) {
    const std::uint32_t w = bitmap.width();
    const std::uint32_t h = bitmap.height();
    const std::uint32_t c = bitmap.channels();
    const std::size_t stride = static_cast<std::size_t>(w) * c;

    std::vector<std::uint8_t> raw((stride + 1) * h);
    for (std::uint32_t y = 0; y < h; ++y) {
        std::uint8_t* dst = raw.data() + y * (stride + 1);
        dst[0] = 0;  // filter: none
        const auto row = bitmap.row(y);
        for (std::size_t i = 0; i < stride; ++i) dst[i + 1] = quantize_8bit(row[i]);
    }

    uLongf packed_len = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> packed(packed_len);
    if (compress2(packed.data(), &packed_len, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw Error(ErrorCode::Io, "zlib compression failed");
    packed.resize(packed_len);

    std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());
    auto chunk = [&out](const char* tag, const std::vector<std::uint8_t>& data) {
        write_be32(out, static_cast<std::uint32_t>(data.size()));
        const std::size_t start = out.size();
        out.insert(out.end(), tag, tag + 4);
        out.insert(out.end(), data.begin(), data.end());
        write_be32(out, static_cast<std::uint32_t>(
                            crc32(crc32(0L, nullptr, 0), out.data() + start, out.size() - start)));
    };

    std::vector<std::uint8_t> ihdr;
    write_be32(ihdr, w);
    write_be32(ihdr, h);
    ihdr.push_back(8);
    ihdr.push_back(c == 3 ? kRgb : kGray);
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    chunk("IHDR", ihdr);
    chunk("IDAT", packed);
    chunk("IEND", {});
    return out;
}

void save_png(const Bitmap& bitmap, const std::filesystem::path& path) {
    const auto bytes = encode_png(bitmap);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace msps
