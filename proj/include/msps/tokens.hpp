// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MSPS_TOKENS_HPP
#define MSPS_TOKENS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace msps {

using TokenCounter = std::function<std::size_t(std::string_view)>;

// Runs of ASCII letters/digits count as one token each; every other
// non-whitespace byte is a token of its own.
std::size_t count_proxy_tokens(std::string_view text);

// Whitespace-separated words.
std::size_t count_whitespace_tokens(std::string_view text);

// "proxy" (default) or "whitespace"; throws InvalidArgument otherwise.
TokenCounter token_counter(std::string_view id);

struct DatasetStats {
    std::uint64_t items = 0;
    std::uint64_t total_tokens = 0;
    std::uint64_t median_tokens_per_item = 0;
    std::uint64_t skipped_lines = 0;

    std::string to_json() const;
    friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

// Median of per-item counts; for an even count, the floor of the mean of the
// two middle values. Empty input gives 0.
std::uint64_t median_count(std::vector<std::uint64_t> counts);

DatasetStats summarize_counts(const std::vector<std::uint64_t>& counts);

}  // namespace msps

#endif  // MSPS_TOKENS_HPP
