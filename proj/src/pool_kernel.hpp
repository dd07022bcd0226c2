// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

// 2x2 average pooling of one row pair, shared by the explicit pyramid and the
// streaming metric so both produce identical values.

#ifndef MSPS_SRC_POOL_KERNEL_HPP
#define MSPS_SRC_POOL_KERNEL_HPP

#include <cstddef>
#include <cstdint>

namespace msps::detail {

// Pools one output row from source rows r0 and r1 (r1 null at an odd bottom
// edge). C is the channel count when known at compile time, 0 to use `channels`.
template <std::uint32_t C>
inline void pool_row(const double* r0, const double* r1, std::uint32_t w, std::uint32_t channels,
                     double* dst) {
    const std::uint32_t c = C != 0 ? C : channels;
    const std::uint32_t full_cols = w / 2;  // output columns backed by a full 2-wide window
    if (r1 != nullptr) {
        for (std::uint32_t ox = 0; ox < full_cols; ++ox) {
            const std::size_t s = static_cast<std::size_t>(2 * ox) * c;
            for (std::uint32_t k = 0; k < c; ++k)
                dst[ox * c + k] = (r0[s + k] + r0[s + c + k] + r1[s + k] + r1[s + c + k]) * 0.25;
        }
        if (w % 2 != 0) {
            const std::size_t s = static_cast<std::size_t>(2 * full_cols) * c;
            for (std::uint32_t k = 0; k < c; ++k)
                dst[full_cols * c + k] = (r0[s + k] + r1[s + k]) * 0.5;
        }
    } else {
        for (std::uint32_t ox = 0; ox < full_cols; ++ox) {
            const std::size_t s = static_cast<std::size_t>(2 * ox) * c;
            for (std::uint32_t k = 0; k < c; ++k)
                dst[ox * c + k] = (r0[s + k] + r0[s + c + k]) * 0.5;
        }
        if (w % 2 != 0) {
            const std::size_t s = static_cast<std::size_t>(2 * full_cols) * c;
            for (std::uint32_t k = 0; k < c; ++k) dst[full_cols * c + k] = r0[s + k];
        }
    }
}

using RowFn = void (*)(const double*, const double*, std::uint32_t, std::uint32_t, double*);

inline RowFn row_kernel(std::uint32_t c) {
    switch (c) {
        case 1: return &pool_row<1>;
        case 3: return &pool_row<3>;
        default: return &pool_row<0>;
    }
}

}  // namespace msps::detail

#endif  // MSPS_SRC_POOL_KERNEL_HPP
