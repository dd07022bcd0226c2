// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/correlation.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "msps/error.hpp"

namespace msps {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Modified Lentz evaluation of the incomplete beta continued fraction.
// Converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) return h;
    }
    return h;
}

// log of x^a (1-x)^b / (a B(a, b)), the prefactor of the lower-tail fraction.
double log_prefactor(double a, double b, double x) {
    return std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
           b * std::log1p(-x) - std::log(a);
}

// Returns log I_x(a, b) for x below the crossover, where the direct fraction
// is used and the value may be far below DBL_MIN.
double log_incomplete_beta_lower(double a, double b, double x) {
    return log_prefactor(a, b, x) + std::log(beta_continued_fraction(a, b, x));
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "incomplete_beta: need a, b > 0 and x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_incomplete_beta_lower(a, b, x));
    return 1.0 - std::exp(log_incomplete_beta_lower(b, a, 1.0 - x));
}

double student_t_two_tailed(double t, double dof) {
    if (!(dof > 0.0)) throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be > 0");
    if (std::isinf(t)) return 0.0;
    return incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::InvalidArgument, "pearson: sequences differ in length (" +
                                                    std::to_string(x.size()) + " vs " +
                                                    std::to_string(y.size()) + ")");
    const std::size_t n = x.size();
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "pearson: need at least 3 samples");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw Error(ErrorCode::InvalidArgument, "pearson: non-finite sample");

    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error(ErrorCode::InvalidArgument, "pearson: zero variance input");

    CorrelationResult result;
    result.n = n;
    result.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);

    // With t^2 = r^2 (n-2) / (1-r^2), the beta argument dof/(dof+t^2) reduces
    // to 1 - r^2, computed as (1-|r|)(1+|r|) to keep precision near |r| = 1.
    const double dof = static_cast<double>(n - 2);
    const double abs_r = std::abs(result.r);
    const double x_beta = (1.0 - abs_r) * (1.0 + abs_r);
    if (x_beta == 0.0) {
        result.p_value = 0.0;
        return result;
    }
    const double a = 0.5 * dof;
    const double b = 0.5;
    if (x_beta < (a + 1.0) / (a + b + 2.0)) {
        const double log_p = log_incomplete_beta_lower(a, b, x_beta);
        const double p = std::exp(log_p);
        if (p < DBL_MIN) {
            result.p_value = 0.0;
            result.underflow = true;
        } else {
            result.p_value = std::min(1.0, p);
        }
    } else {
        result.p_value = std::clamp(incomplete_beta(a, b, x_beta), 0.0, 1.0);
    }
    return result;
}

}  // namespace msps
