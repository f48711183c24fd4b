#include "parallel_join.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "join.hpp"

namespace ssj {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CandidatePair {
    std::uint32_t lo;
    std::uint32_t hi;
};

// A record whose buffer saturated: every j in [resume, record) bypasses the
// filter and goes straight to verification.
struct SaturatedRange {
    std::uint32_t record;
    std::uint32_t resume;
};

struct WorkerOutput {
    std::vector<CandidatePair> buffered;
    std::vector<SaturatedRange> ranges;
    JoinCounters counters;
    std::uint64_t saturated_records = 0;
};

}  // namespace

JoinReport parallel_bitmap_join(const TokenizedCollection& collection, const JoinOptions& options) {
    if (options.workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (options.buffer_capacity < 1) throw std::invalid_argument("buffer capacity must be >= 1");
    if (options.spec.function != SimFunction::Jaccard)
        throw std::invalid_argument("the data-parallel join takes a jaccard threshold");

    JoinReport report;
    auto total_start = Clock::now();
    const auto& records = collection.records;
    const SimilaritySpec& spec = options.spec;
    const Rational& tau = spec.threshold;

    ResolvedBitmap bitmap = resolve_bitmap(collection, options);
    BitmapStore store;
    if (bitmap.enabled) store = build_bitmaps(records, bitmap.config, bitmap.method);
    report.timings.index_s = seconds_since(total_start);

    const std::size_t n = records.size();
    const int workers = static_cast<int>(std::min<std::size_t>(options.workers, std::max<std::size_t>(n, 1)));
    std::vector<WorkerOutput> outputs(static_cast<std::size_t>(workers));

    auto scan_range = [&](std::size_t begin, std::size_t end, WorkerOutput& out) {
        const std::size_t capacity = static_cast<std::size_t>(options.buffer_capacity);
        for (std::size_t i = begin; i < end; ++i) {
            const RecordSet& ri = records[i];
            // First index the length filter admits: size >= ceil(tau * |R[i]|).
            std::int64_t min_size = ceil_div(static_cast<__int128>(tau.num) * ri.size(), tau.den);
            std::size_t j0 = static_cast<std::size_t>(
                std::partition_point(records.begin(), records.begin() + static_cast<std::ptrdiff_t>(i),
                                     [&](const RecordSet& s) { return s.size() < min_size; }) -
                records.begin());
            std::size_t buffered_here = 0;
            for (std::size_t j = j0; j < i; ++j) {
                out.counters.candidates += 1;
                if (bitmap.enabled) {
                    out.counters.bitmap_tested += 1;
                    std::int64_t minov = required_overlap(spec, ri.size(), records[j].size());
                    if (bitmap_filter_skip(ri.size(), records[j].size(), store.row(i), store.row(j),
                                           minov, bitmap.config)) {
                        out.counters.pruned_bitmap += 1;
                        continue;
                    }
                }
                out.buffered.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)});
                if (++buffered_here == capacity) {
                    out.saturated_records += 1;
                    if (j + 1 < i) {
                        // Buffer full: the rest of this record's window skips
                        // the filter and is verified as-is.
                        out.counters.candidates += static_cast<std::uint64_t>(i - j - 1);
                        out.ranges.push_back(
                            {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j + 1)});
                    }
                    break;
                }
            }
        }
    };

    if (workers == 1) {
        scan_range(0, n, outputs[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            std::size_t begin = std::min(n, static_cast<std::size_t>(w) * chunk);
            std::size_t end = std::min(n, begin + chunk);
            pool.emplace_back(scan_range, begin, end, std::ref(outputs[static_cast<std::size_t>(w)]));
        }
        for (auto& t : pool) t.join();
    }
    report.timings.candidates_s = seconds_since(total_start) - report.timings.index_s;

    // Stream compaction: concatenate per-worker output in worker order.
    auto verify_start = Clock::now();
    auto verify_pair = [&](std::uint32_t lo, std::uint32_t hi) {
        const RecordSet& a = records[lo];
        const RecordSet& b = records[hi];
        report.counters.verified += 1;
        if (options.record_verified_pairs) report.verified_pairs.push_back({lo, hi});
        auto v = verify(a, b, required_overlap(spec, a.size(), b.size()));
        if (v.matched) {
            report.counters.matched += 1;
            report.pairs.push_back({lo, hi, v.overlap});
        }
    };
    for (const WorkerOutput& out : outputs) {
        report.counters.candidates += out.counters.candidates;
        report.counters.pruned_bitmap += out.counters.pruned_bitmap;
        report.counters.bitmap_tested += out.counters.bitmap_tested;
        report.saturated_records += out.saturated_records;
        for (const CandidatePair& c : out.buffered) verify_pair(c.lo, c.hi);
        for (const SaturatedRange& range : out.ranges)
            for (std::uint32_t j = range.resume; j < range.record; ++j) verify_pair(j, range.record);
    }
    std::sort(report.pairs.begin(), report.pairs.end());
    report.timings.verify_s = seconds_since(verify_start);
    report.timings.total_s = seconds_since(total_start);
    return report;
}

}  // namespace ssj
