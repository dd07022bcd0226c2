// Copyright 2026 The msps Authors
// SPDX-License-Identifier: Apache-2.0

#include "msps/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "msps/error.hpp"
#include "msps/png_io.hpp"

namespace msps {
namespace {

using ordered_json = nlohmann::ordered_json;

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string describe(const Error& e) { return std::string(error_code_name(e.code())) + ": " + e.what(); }

// align_pair returns copies; only pay for them when padding is needed.
class AlignedPair {
public:
    AlignedPair(const Bitmap& a, const Bitmap& b, AlignMode mode, Color fill) : a_(&a), b_(&b) {
        if (!a.same_shape(b)) {
            padded_ = align_pair(a, b, mode, fill);
            a_ = &padded_->first;
            b_ = &padded_->second;
        }
    }
    const Bitmap& a() const { return *a_; }
    const Bitmap& b() const { return *b_; }

private:
    std::optional<std::pair<Bitmap, Bitmap>> padded_;
    const Bitmap* a_;
    const Bitmap* b_;
};

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

ManifestEntry evaluate_pair(const ImagePair& pair, const FilterConfig& config) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    ManifestEntry entry;
    entry.pair_id = pair.pair_id;
    entry.reference_path = pair.reference_path.generic_string();
    entry.candidate_path = pair.candidate_path.generic_string();
    try {
        PngRowReader ref = PngRowReader::open(pair.reference_path);
        PngRowReader cand = PngRowReader::open(pair.candidate_path);
        std::vector<std::pair<MetricId, double>> scores;
        if (ref.width() == cand.width() && ref.height() == cand.height() &&
            ref.channels() == cand.channels()) {
            // Common case: stream both files through one scorer, never
            // holding a full image in memory.
            PairScorer scorer(ref.width(), ref.height(), ref.channels());
            for (std::uint32_t y = 0; y < ref.height(); ++y) scorer.add_rows(ref.next_row(), cand.next_row());
            scores.emplace_back(config.metric, scorer.score(config.metric));
            for (MetricId extra : config.extra_metrics)
                if (extra != config.metric) scores.emplace_back(extra, scorer.score(extra));
        } else {
            // Shapes differ: padding (or the strict-mode error) needs whole images.
            const Bitmap a_full = load_png(pair.reference_path);
            const Bitmap b_full = load_png(pair.candidate_path);
            const AlignedPair pair_view(a_full, b_full, config.align, config.fill);
            scores.emplace_back(config.metric, score(config.metric, pair_view.a(), pair_view.b()));
            for (MetricId extra : config.extra_metrics)
                if (extra != config.metric)
                    scores.emplace_back(extra, score(extra, pair_view.a(), pair_view.b()));
        }
        const double value = scores.front().second;
        entry.scores = std::move(scores);
        entry.verdict = value >= config.threshold ? Verdict::Pass : Verdict::Fail;
    } catch (const Error& e) {
        entry.scores.clear();
        entry.verdict = Verdict::Error;
        entry.error_detail = describe(e);
    } catch (const std::exception& e) {
        entry.scores.clear();
        entry.verdict = Verdict::Error;
        entry.error_detail = std::string("internal: ") + e.what();
    }
    entry.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
    return entry;
}

}  // namespace

ScanResult scan_pairs(const std::filesystem::path& root, const PairingRule& rule) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw Error(ErrorCode::Io, "not a readable directory: " + root.string());

    std::map<std::string, fs::path> refs;
    std::map<std::string, fs::path> cands;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot read " + root.string() + ": " + ec.message());
    for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) throw Error(ErrorCode::Io, "cannot read " + root.string() + ": " + ec.message());
        if (!it->is_regular_file(ec)) continue;
        const std::string rel = it->path().lexically_relative(root).generic_string();
        if (ends_with(rel, rule.reference_suffix))
            refs[rel.substr(0, rel.size() - rule.reference_suffix.size())] = it->path();
        else if (ends_with(rel, rule.candidate_suffix))
            cands[rel.substr(0, rel.size() - rule.candidate_suffix.size())] = it->path();
    }

    ScanResult result;
    for (const auto& [id, path] : refs) {
        const auto match = cands.find(id);
        if (match == cands.end()) {
            result.warnings.push_back("unpaired reference: " + id);
            continue;
        }
        result.pairs.push_back({id, path, match->second});
    }
    for (const auto& [id, path] : cands)
        if (!refs.contains(id)) result.warnings.push_back("unpaired candidate: " + id);
    std::sort(result.warnings.begin(), result.warnings.end());
    return result;
}

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Error: return "error";
    }
    return "unknown";
}

void FilterConfig::validate() const {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0, 1]");
    if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
    for (double f : {fill.r, fill.g, fill.b})
        if (!(f >= 0.0 && f <= 1.0)) throw Error(ErrorCode::InvalidArgument, "fill color outside [0, 1]");
}

std::optional<double> ManifestEntry::score(MetricId id) const {
    for (const auto& [m, v] : scores)
        if (m == id) return v;
    return std::nullopt;
}

std::string ManifestEntry::to_json_line(bool include_timing) const {
    ordered_json j;
    j["pair_id"] = pair_id;
    j["reference_path"] = reference_path;
    j["candidate_path"] = candidate_path;
    ordered_json s = ordered_json::object();
    for (const auto& [m, v] : scores) s[std::string(metric_name(m))] = v;
    j["scores"] = std::move(s);
    j["verdict"] = verdict_name(verdict);
    j["error_detail"] = error_detail ? ordered_json(*error_detail) : ordered_json(nullptr);
    if (include_timing) j["wall_time_s"] = wall_time_s;
    return j.dump();
}

std::string FilterSummary::to_json() const {
    ordered_json j;
    j["total"] = total;
    j["pass"] = pass;
    j["fail"] = fail;
    j["error"] = error;
    j["pass_rate"] = pass_rate;
    auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    j["score_median"] = opt(score_median);
    j["score_min"] = opt(score_min);
    j["score_max"] = opt(score_max);
    return j.dump();
}

FilterResult filter_dataset(std::span<const ImagePair> pairs, const FilterConfig& config) {
    config.validate();
    FilterResult result;
    result.entries.resize(pairs.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < pairs.size();)
            result.entries[i] = evaluate_pair(pairs[i], config);
    };
    const unsigned threads =
        std::max(1u, static_cast<unsigned>(std::min<std::size_t>(config.workers, pairs.size())));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    FilterSummary& s = result.summary;
    std::vector<double> scored;
    s.total = result.entries.size();
    for (const auto& e : result.entries) {
        switch (e.verdict) {
            case Verdict::Pass: ++s.pass; break;
            case Verdict::Fail: ++s.fail; break;
            case Verdict::Error: ++s.error; break;
        }
        if (e.verdict != Verdict::Error) scored.push_back(*e.score(config.metric));
    }
    s.pass_rate = s.total ? static_cast<double>(s.pass) / static_cast<double>(s.total) : 0.0;
    if (!scored.empty()) {
        s.score_min = *std::min_element(scored.begin(), scored.end());
        s.score_max = *std::max_element(scored.begin(), scored.end());
        s.score_median = median_of(std::move(scored));
    }
    return result;
}

std::string manifest_jsonl(std::span<const ManifestEntry> entries, bool include_timing) {
    std::string out;
    for (const auto& e : entries) {
        out += e.to_json_line(include_timing);
        out += '\n';
    }
    return out;
}

RankResult rank_best_of_n(const Bitmap& reference, std::span<const Bitmap> candidates,
                          MetricId metric, AlignMode align, Color fill) {
    if (candidates.empty()) throw Error(ErrorCode::InvalidArgument, "rank_best_of_n needs at least one candidate");
    RankResult result;
    result.scores.resize(candidates.size());
    result.errors.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        try {
            const AlignedPair pair_view(reference, candidates[i], align, fill);
            const double value = score(metric, pair_view.a(), pair_view.b());
            result.scores[i] = is_similarity(metric) ? value : -value;
        } catch (const Error& e) {
            result.scores[i] = -std::numeric_limits<double>::infinity();
            result.errors[i] = describe(e);
        }
    }
    result.ordering.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) result.ordering[i] = i;
    std::stable_sort(result.ordering.begin(), result.ordering.end(),
                     [&](std::size_t x, std::size_t y) { return result.scores[x] > result.scores[y]; });
    return result;
}

DatasetStats dataset_stats(const std::filesystem::path& manifest, const TokenCounter& counter) {
    std::ifstream in(manifest, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open manifest " + manifest.string());
    const std::filesystem::path dir = manifest.parent_path();

    std::vector<std::uint64_t> counts;
    std::uint64_t skipped = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            ++skipped;
            continue;
        }
        if (const auto files = record.find("files"); files != record.end()) {
            if (!files->is_array()) {
                ++skipped;
                continue;
            }
            std::uint64_t total = 0;
            bool ok = true;
            for (const auto& f : *files) {
                if (!f.is_string()) {
                    ok = false;
                    break;
                }
                std::ifstream payload(dir / f.get<std::string>(), std::ios::binary);
                if (!payload) {
                    ok = false;
                    break;
                }
                std::ostringstream text;
                text << payload.rdbuf();
                total += counter(text.str());
            }
            if (!ok) {
                ++skipped;
                continue;
            }
            counts.push_back(total);
        } else if (const auto tc = record.find("token_count");
                   tc != record.end() && tc->is_number_unsigned()) {
            counts.push_back(tc->get<std::uint64_t>());
        } else {
            ++skipped;
        }
    }
    DatasetStats stats = summarize_counts(counts);
    stats.skipped_lines = skipped;
    return stats;
}

}  // namespace msps
