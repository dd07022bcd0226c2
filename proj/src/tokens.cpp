// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/tokens.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "json.hpp"

#include "msps/error.hpp"

namespace msps {
namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0; }

}  // namespace

std::size_t count_proxy_tokens(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (const unsigned char c : text) {
        if (is_word_byte(c)) {
            if (!in_word) ++count;
            in_word = true;
            continue;
        }
        in_word = false;
        if (!std::isspace(c)) ++count;
    }
    return count;
}

std::size_t count_whitespace_tokens(std::string_view text) {
    std::size_t count = 0;
    bool in_word = false;
    for (const unsigned char c : text) {
        const bool space = std::isspace(c) != 0;
        if (!space && !in_word) ++count;
        in_word = !space;
    }
    return count;
}

TokenCounter token_counter(std::string_view id) {
    if (id.empty() || id == "proxy") return count_proxy_tokens;
    if (id == "whitespace") return count_whitespace_tokens;
    throw Error(ErrorCode::InvalidArgument, "unknown token counter '" + std::string(id) + "'");
}

std::uint64_t median_count(std::vector<std::uint64_t> counts) {
    if (counts.empty()) return 0;
    std::sort(counts.begin(), counts.end());
    const std::size_t mid = counts.size() / 2;
    if (counts.size() % 2 == 1) return counts[mid];
    return std::midpoint(counts[mid - 1], counts[mid]);
}

DatasetStats summarize_counts(const std::vector<std::uint64_t>& counts) {
    DatasetStats stats;
    stats.items = counts.size();
    stats.total_tokens = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    stats.median_tokens_per_item = median_count(counts);
    return stats;
}

std::string DatasetStats::to_json() const {
    nlohmann::ordered_json j;
    j["items"] = items;
    j["total_tokens"] = total_tokens;
    j["median_tokens_per_item"] = median_tokens_per_item;
    j["skipped_lines"] = skipped_lines;
    return j.dump();
}

}  // namespace msps
