// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/perturb.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "msps/error.hpp"

namespace msps {
namespace {

// Source coordinates this close to a grid point are snapped onto it, so that
// e.g. a 360 degree rotation samples exactly instead of leaking fill at edges.
constexpr double kSnap = 1e-9;

double snap(double v) {
    const double r = std::round(v);
    return std::abs(v - r) < kSnap ? r : v;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

bool is_integer_translation(const Perturbation& p) {
    return p.kind == PerturbKind::Translate && p.a == std::floor(p.a) && p.b == std::floor(p.b) &&
           std::abs(p.a) < 1e9 && std::abs(p.b) < 1e9;
}

std::vector<double> fill_pixel(const Bitmap& bitmap, Color fill) {
    if (bitmap.channels() == 3) return {fill.r, fill.g, fill.b};
    return {fill.luma()};
}

Bitmap translate_exact(const Bitmap& src, long dx, long dy, const std::vector<double>& fill) {
    const long w = src.width();
    const long h = src.height();
    const std::uint32_t c = src.channels();
    std::vector<double> out;
    out.reserve(src.values().size());
    for (long y = 0; y < h; ++y) {
        const long sy = y - dy;
        for (long x = 0; x < w; ++x) {
            const long sx = x - dx;
            if (sx >= 0 && sx < w && sy >= 0 && sy < h) {
                for (std::uint32_t k = 0; k < c; ++k)
                    out.push_back(src.at(static_cast<std::uint32_t>(sx), static_cast<std::uint32_t>(sy), k));
            } else {
                out.insert(out.end(), fill.begin(), fill.end());
            }
        }
    }
    return Bitmap(Bitmap::Trusted{}, src.width(), src.height(), c, std::move(out));
}

// Inverse map: output pixel -> source coordinate, as a 2x2 linear part plus
// offset, both about the canvas center.
struct InverseMap {
    double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    double tx = 0, ty = 0;
};

InverseMap inverse_map(const Perturbation& p) {
    InverseMap m;
    switch (p.kind) {
        case PerturbKind::Identity: break;
        case PerturbKind::Rotate: {
            const double rad = p.a * std::numbers::pi / 180.0;
            const double c = std::cos(rad);
            const double s = std::sin(rad);
            // Forward (y down): x' = c x + s y, y' = -s x + c y.
            m.m00 = c;
            m.m01 = -s;
            m.m10 = s;
            m.m11 = c;
            break;
        }
        case PerturbKind::Translate:
            m.tx = p.a;
            m.ty = p.b;
            break;
        case PerturbKind::Scale:
            m.m00 = 1.0 / p.a;
            m.m11 = 1.0 / p.a;
            break;
        case PerturbKind::Squeeze:
            m.m00 = 1.0 / p.a;
            m.m11 = 1.0 / p.b;
            break;
    }
    return m;
}

Bitmap resample(const Bitmap& src, const Perturbation& p) {
    const std::uint32_t w = src.width();
    const std::uint32_t h = src.height();
    const std::uint32_t c = src.channels();
    const double cx = (w - 1) / 2.0;
    const double cy = (h - 1) / 2.0;
    const InverseMap m = inverse_map(p);
    const auto fill = fill_pixel(src, p.fill);

    auto tap = [&](long x, long y, std::uint32_t k) {
        if (x < 0 || y < 0 || x >= static_cast<long>(w) || y >= static_cast<long>(h)) return fill[k];
        return src.at(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y), k);
    };

    std::vector<double> out;
    out.reserve(src.values().size());
    for (std::uint32_t y = 0; y < h; ++y) {
        for (std::uint32_t x = 0; x < w; ++x) {
            const double ux = x - cx - m.tx;
            const double uy = y - cy - m.ty;
            const double sx = snap(cx + m.m00 * ux + m.m01 * uy);
            const double sy = snap(cy + m.m10 * ux + m.m11 * uy);
            if (p.interpolation == Interpolation::Nearest) {
                const long nx = static_cast<long>(std::floor(sx + 0.5));
                const long ny = static_cast<long>(std::floor(sy + 0.5));
                for (std::uint32_t k = 0; k < c; ++k) out.push_back(tap(nx, ny, k));
                continue;
            }
            const double fx0 = std::floor(sx);
            const double fy0 = std::floor(sy);
            const double fx = sx - fx0;
            const double fy = sy - fy0;
            const long x0 = static_cast<long>(fx0);
            const long y0 = static_cast<long>(fy0);
            for (std::uint32_t k = 0; k < c; ++k) {
                double v = (1.0 - fx) * (1.0 - fy) * tap(x0, y0, k);
                if (fx > 0.0) v += fx * (1.0 - fy) * tap(x0 + 1, y0, k);
                if (fy > 0.0) v += (1.0 - fx) * fy * tap(x0, y0 + 1, k);
                if (fx > 0.0 && fy > 0.0) v += fx * fy * tap(x0 + 1, y0 + 1, k);
                out.push_back(std::clamp(v, 0.0, 1.0));
            }
        }
    }
    return Bitmap(Bitmap::Trusted{}, w, h, c, std::move(out));
}

}  // namespace

std::string_view perturb_kind_name(PerturbKind kind) noexcept {
    switch (kind) {
        case PerturbKind::Identity: return "identity";
        case PerturbKind::Rotate: return "rotate";
        case PerturbKind::Translate: return "translate";
        case PerturbKind::Scale: return "scale";
        case PerturbKind::Squeeze: return "squeeze";
    }
    return "unknown";
}

void Perturbation::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw Error(ErrorCode::InvalidArgument, "perturbation parameters must be finite");
    for (double f : {fill.r, fill.g, fill.b})
        if (!(f >= 0.0 && f <= 1.0))
            throw Error(ErrorCode::InvalidArgument, "fill color outside [0, 1]");
    if (kind == PerturbKind::Scale && !(a > 0.0))
        throw Error(ErrorCode::InvalidArgument, "scale factor must be > 0");
    if (kind == PerturbKind::Squeeze && !(a > 0.0 && b > 0.0))
        throw Error(ErrorCode::InvalidArgument, "squeeze factors must be > 0");
}

std::string Perturbation::label() const {
    std::string out(perturb_kind_name(kind));
    switch (kind) {
        case PerturbKind::Identity: break;
        case PerturbKind::Rotate:
        case PerturbKind::Scale: out += "(" + format_number(a) + ")"; break;
        case PerturbKind::Translate:
        case PerturbKind::Squeeze:
            out += "(" + format_number(a) + "," + format_number(b) + ")";
            break;
    }
    return out;
}

Bitmap apply(const Bitmap& bitmap, const Perturbation& p) {
    p.validate();
    if (p.kind == PerturbKind::Identity) return bitmap;
    if (is_integer_translation(p))
        return translate_exact(bitmap, static_cast<long>(p.a), static_cast<long>(p.b),
                               fill_pixel(bitmap, p.fill));
    return resample(bitmap, p);
}

std::vector<Perturbation> default_perturbations(std::uint32_t width, std::uint32_t height) {
    return {
        Perturbation::rotate(5.0),
        Perturbation::translate(std::round(0.1 * width), std::round(0.1 * height)),
        Perturbation::squeeze(0.8, 1.0),
        Perturbation::scale(0.5),
        Perturbation::translate(1.0, 1.0),
    };
}

Bitmap structured_test_image(std::uint32_t width, std::uint32_t height) {
    if (width == 0 || height == 0)
        throw Error(ErrorCode::InvalidArgument, "test image dimensions must be >= 1");
    static constexpr Color kPalette[] = {
        {0.85, 0.20, 0.20}, {0.20, 0.55, 0.85}, {0.15, 0.65, 0.30},
        {0.95, 0.75, 0.10}, {0.45, 0.25, 0.70}, {0.10, 0.10, 0.10},
    };
    constexpr std::uint32_t kGrid = 8;
    const double cell_w = static_cast<double>(width) / kGrid;
    const double cell_h = static_cast<double>(height) / kGrid;

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(width) * height * 3);
    for (std::uint32_t y = 0; y < height; ++y) {
        const double v = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
        const auto gy = static_cast<std::uint32_t>(y / cell_h);
        const double iy = y - gy * cell_h;
        for (std::uint32_t x = 0; x < width; ++x) {
            const double u = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
            const auto gx = static_cast<std::uint32_t>(x / cell_w);
            const double ix = x - gx * cell_w;
            // Rect occupies the middle of each cell; sizes vary by cell so
            // edges do not line up on a regular lattice.
            const double inset_x = cell_w * (0.12 + 0.04 * ((gx + 2 * gy) % 3));
            const double inset_y = cell_h * (0.12 + 0.04 * ((2 * gx + gy) % 3));
            const bool inside = ix >= inset_x && ix < cell_w - inset_x && iy >= inset_y &&
                                iy < cell_h - inset_y;
            Color px{0.90 - 0.35 * u, 0.80 - 0.20 * v, 0.55 + 0.35 * v};
            if (inside) px = kPalette[(gx + 3 * gy) % std::size(kPalette)];
            values.push_back(px.r);
            values.push_back(px.g);
            values.push_back(px.b);
        }
    }
    return Bitmap(width, height, 3, std::move(values));
}

RobustnessReport robustness_report(const Bitmap& reference, std::span<const MetricId> metrics,
                                   std::span<const Perturbation> perturbations,
                                   unsigned workers) {
    if (metrics.empty() || perturbations.empty())
        throw Error(ErrorCode::InvalidArgument, "robustness_report needs metrics and perturbations");
    for (const auto& p : perturbations) p.validate();

    RobustnessReport report;
    report.metrics.assign(metrics.begin(), metrics.end());
    report.perturbations.assign(perturbations.begin(), perturbations.end());
    report.cells.assign(metrics.size(), std::vector<RobustnessCell>(perturbations.size()));

    auto run_column = [&](std::size_t col) {
        using Clock = std::chrono::steady_clock;
        const Bitmap transformed = apply(reference, perturbations[col]);
        for (std::size_t row = 0; row < metrics.size(); ++row) {
            const auto start = Clock::now();
            const double value = score(metrics[row], reference, transformed);
            const std::chrono::duration<double> elapsed = Clock::now() - start;
            report.cells[row][col] = {std::max(0.0, to_loss(metrics[row], value)), elapsed.count()};
        }
    };

    const unsigned threads =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(perturbations.size())));
    if (threads == 1) {
        for (std::size_t col = 0; col < perturbations.size(); ++col) run_column(col);
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t col; (col = next.fetch_add(1)) < perturbations.size();) run_column(col);
        });
    pool.clear();
    return report;
}

std::string RobustnessReport::to_csv() const {
    std::ostringstream out;
    out << "metric,perturbation,loss,wall_time_s\n";
    char buf[64];
    for (std::size_t row = 0; row < metrics.size(); ++row) {
        for (std::size_t col = 0; col < perturbations.size(); ++col) {
            const auto& c = cells[row][col];
            out << metric_name(metrics[row]) << ",\"" << perturbations[col].label() << "\",";
            std::snprintf(buf, sizeof buf, "%.17g,%.6f", c.loss, c.wall_time_s);
            out << buf << "\n";
        }
    }
    return out.str();
}

std::string RobustnessReport::to_json() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t row = 0; row < metrics.size(); ++row) {
        for (std::size_t col = 0; col < perturbations.size(); ++col) {
            nlohmann::ordered_json cell;
            cell["metric"] = metric_name(metrics[row]);
            cell["perturbation"] = perturbations[col].label();
            cell["loss"] = cells[row][col].loss;
            cell["wall_time_s"] = cells[row][col].wall_time_s;
            rows.push_back(std::move(cell));
        }
    }
    return rows.dump();
}

}  // namespace msps
