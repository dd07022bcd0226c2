// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_CORRELATION_HPP
#define MSPS_CORRELATION_HPP

#include <cstddef>
#include <span>

namespace msps {

struct CorrelationResult {
    double r = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    // Set when the true p-value is positive but below the smallest normal
    // double; p_value is then reported as 0.0.
    bool underflow = false;
};

// Sample Pearson correlation with a two-tailed p-value from Student's t with
// n - 2 degrees of freedom. Throws InvalidArgument on length mismatch, n < 3,
// non-finite input, or a constant sequence.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_tailed(double t, double dof);

}  // namespace msps

#endif  // MSPS_CORRELATION_HPP
