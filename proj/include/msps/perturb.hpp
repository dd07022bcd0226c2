// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_PERTURB_HPP
#define MSPS_PERTURB_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "msps/bitmap.hpp"
#include "msps/metrics.hpp"

namespace msps {

enum class PerturbKind { Identity, Rotate, Translate, Scale, Squeeze };
enum class Interpolation { Bilinear, Nearest };

// A geometric transform about the canvas center. Parameter meaning depends on
// the kind: rotate uses `a` as degrees (counter-clockwise on screen); translate
// uses (a, b) as (dx, dy) pixels; scale uses `a` as a uniform factor; squeeze
// uses (a, b) as (x factor, y factor).
struct Perturbation {
    PerturbKind kind = PerturbKind::Identity;
    double a = 0.0;
    double b = 0.0;
    Color fill = Color::white();
    Interpolation interpolation = Interpolation::Bilinear;

    static Perturbation identity() { return {}; }
    static Perturbation rotate(double degrees) { return {PerturbKind::Rotate, degrees, 0.0}; }
    static Perturbation translate(double dx, double dy) { return {PerturbKind::Translate, dx, dy}; }
    static Perturbation scale(double factor) { return {PerturbKind::Scale, factor, 0.0}; }
    static Perturbation squeeze(double fx, double fy) { return {PerturbKind::Squeeze, fx, fy}; }

    // Throws InvalidArgument for non-finite parameters or non-positive factors.
    void validate() const;
    // Short stable label such as "rotate(5)" or "translate(1,1)".
    std::string label() const;
};

std::string_view perturb_kind_name(PerturbKind kind) noexcept;

// Same canvas size as the input. Each output pixel is inverse-mapped into the
// source; out-of-source taps take `fill`. Integer translations are a pure
// index remap with no interpolation.
Bitmap apply(const Bitmap& bitmap, const Perturbation& p);

// rotate 5 deg, translate round(10% W, 10% H), squeeze (0.8, 1.0), scale 0.5,
// translate (1, 1).
std::vector<Perturbation> default_perturbations(std::uint32_t width, std::uint32_t height);

// Procedural reference image: diagonal gradient background with a grid of
// solid colored rectangles. Deterministic in (width, height).
Bitmap structured_test_image(std::uint32_t width, std::uint32_t height);

struct RobustnessCell {
    double loss = 0.0;
    double wall_time_s = 0.0;
};

struct RobustnessReport {
    std::vector<MetricId> metrics;           // rows
    std::vector<Perturbation> perturbations;  // columns
    std::vector<std::vector<RobustnessCell>> cells;  // [row][column]

    const RobustnessCell& cell(std::size_t row, std::size_t column) const {
        return cells.at(row).at(column);
    }

    std::string to_csv() const;
    std::string to_json() const;
};

// cell[m][p] = loss_m(reference, apply(reference, p)). Columns may be
// evaluated on up to `workers` threads; the layout never depends on it.
RobustnessReport robustness_report(const Bitmap& reference, std::span<const MetricId> metrics,
                                   std::span<const Perturbation> perturbations,
                                   unsigned workers = 1);

}  // namespace msps

#endif  // MSPS_PERTURB_HPP
