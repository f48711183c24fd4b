#include "join.hpp"

#include <algorithm>
#include <chrono>

#include "parallel_join.hpp"

namespace ssj {

const char* join_algorithm_name(JoinAlgorithm a) {
    switch (a) {
        case JoinAlgorithm::Naive: return "naive";
        case JoinAlgorithm::AllPairs: return "allpairs";
        case JoinAlgorithm::PPJoin: return "ppjoin";
        case JoinAlgorithm::PPJoinPlus: return "ppjoin+";
        case JoinAlgorithm::GroupJoin: return "groupjoin";
        case JoinAlgorithm::AdaptJoin: return "adaptjoin";
        case JoinAlgorithm::ParBitmap: return "par-bitmap";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void finish_pairs(JoinReport& report) {
    std::sort(report.pairs.begin(), report.pairs.end());
}

}  // namespace

Rational jaccard_space_threshold(const SimilaritySpec& spec) {
    const Rational& t = spec.threshold;
    switch (spec.function) {
        case SimFunction::Jaccard:
            return t;
        case SimFunction::Dice:
        case SimFunction::Cosine:
            // x/(2-x): exact for Dice, the equal-size reading for Cosine.
            return Rational(t.num, 2 * t.den - t.num);
        case SimFunction::Overlap:
            break;
    }
    throw std::invalid_argument("no jaccard-space equivalent for overlap thresholds");
}

ResolvedBitmap resolve_bitmap(const TokenizedCollection& collection, const JoinOptions& options) {
    ResolvedBitmap out;
    out.enabled = options.bitmap_enabled;
    if (!out.enabled) return out;

    BitmapConfig cfg;
    cfg.width = options.bitmap_bits > 0 ? options.bitmap_bits
                                        : (collection.median_size() > 64 ? 128 : 64);
    cfg.hash = options.bitmap_hash;

    BitmapMethod method = options.bitmap_method;
    if (method == BitmapMethod::Combined) {
        method = options.spec.function == SimFunction::Overlap
                     ? BitmapMethod::Set
                     : resolve_combined(method, jaccard_space_threshold(options.spec));
    }

    switch (options.cutoff_mode) {
        case CutoffMode::Off:
            cfg.cutoff = kCutoffUnlimited;
            break;
        case CutoffMode::Explicit:
            cfg.cutoff = options.cutoff_value;
            break;
        case CutoffMode::Auto: {
            std::int64_t omega =
                options.spec.function == SimFunction::Overlap
                    ? cutoff_for_overlap(method, cfg.width, options.spec.threshold.num)
                    : cutoff(method, cfg.width, jaccard_space_threshold(options.spec),
                             ThresholdSpace::Jaccard);
            cfg.cutoff = omega;
            break;
        }
    }
    out.method = method;
    out.config = cfg;
    return out;
}

JoinReport naive_join(const TokenizedCollection& r_coll, const TokenizedCollection* s_coll,
                      const SimilaritySpec& spec) {
    JoinReport report;
    auto start = Clock::now();
    const auto& r_records = r_coll.records;
    if (s_coll == nullptr) {
        for (std::size_t j = 1; j < r_records.size(); ++j) {
            const RecordSet& rj = r_records[j];
            for (std::size_t i = 0; i < j; ++i) {
                const RecordSet& ri = r_records[i];
                report.counters.candidates += 1;
                report.counters.verified += 1;
                auto v = verify(ri, rj, required_overlap(spec, ri.size(), rj.size()));
                if (v.matched) {
                    report.counters.matched += 1;
                    report.pairs.push_back({ri.id, rj.id, v.overlap});
                }
            }
        }
    } else {
        for (const RecordSet& r : r_records) {
            for (const RecordSet& s : s_coll->records) {
                report.counters.candidates += 1;
                report.counters.verified += 1;
                auto v = verify(r, s, required_overlap(spec, r.size(), s.size()));
                if (v.matched) {
                    report.counters.matched += 1;
                    report.pairs.push_back({r.id, s.id, v.overlap});
                }
            }
        }
    }
    finish_pairs(report);
    report.timings.verify_s = report.timings.total_s = seconds_since(start);
    return report;
}

namespace {

// AllPairs / PPJoin / PPJoin+: one candidate-generation loop with the
// positional and suffix predicates toggled per algorithm.
JoinReport framework_join(const TokenizedCollection& coll, const JoinOptions& options,
                          bool positional, bool suffix) {
    JoinReport report;
    auto total_start = Clock::now();
    const auto& records = coll.records;
    const SimilaritySpec& spec = options.spec;

    ResolvedBitmap bitmap = resolve_bitmap(coll, options);
    BitmapStore store;
    PrefixIndex index = build_prefix_index(records, spec, 1);
    if (bitmap.enabled) store = build_bitmaps(records, bitmap.config, bitmap.method);
    report.timings.index_s = seconds_since(total_start);

    const bool bitmap_f2 = bitmap.enabled && options.placement == BitmapPlacement::Filter2;
    const bool bitmap_f3 = bitmap.enabled && !bitmap_f2;

    ProbeOptions popts;
    popts.positional = positional;
    popts.suffix = suffix;
    popts.suffix_depth = options.suffix_depth;
    if (bitmap_f2) {
        popts.bitmaps = &store;
        popts.bitmap_cfg = &bitmap.config;
    }

    CandidateScratch scratch;
    std::vector<std::uint32_t> candidates;
    for (const RecordSet& r : records) {
        auto phase_start = Clock::now();
        probe(index, records, r, spec, popts, scratch, report.counters, candidates);
        report.timings.candidates_s += seconds_since(phase_start);

        phase_start = Clock::now();
        for (std::uint32_t sid : candidates) {
            const RecordSet& s = records[sid];
            std::int64_t minov = scratch.min_overlap[sid];
            if (bitmap_f3) {
                report.counters.bitmap_tested += 1;
                if (bitmap_filter_skip(r.size(), s.size(), store.row(r.id), store.row(sid), minov,
                                       bitmap.config)) {
                    report.counters.pruned_bitmap += 1;
                    continue;
                }
            }
            report.counters.verified += 1;
            if (options.record_verified_pairs) report.verified_pairs.push_back({sid, r.id});
            auto v = verify(s, r, minov);
            if (v.matched) {
                report.counters.matched += 1;
                report.pairs.push_back({sid, r.id, v.overlap});
            }
        }
        report.timings.verify_s += seconds_since(phase_start);
    }
    finish_pairs(report);
    report.timings.total_s = seconds_since(total_start);
    return report;
}

struct Group {
    std::uint32_t begin;  // record id range [begin, end)
    std::uint32_t end;

    std::uint32_t size() const { return end - begin; }
};

JoinReport group_join(const TokenizedCollection& coll, const JoinOptions& options) {
    JoinReport report;
    auto total_start = Clock::now();
    const auto& records = coll.records;
    const SimilaritySpec& spec = options.spec;

    // Records sharing (size, full prefix sequence) sit adjacent in canonical
    // order; each run becomes one group probed through its representative.
    std::vector<Group> groups;
    std::vector<RecordSet> reps;
    for (std::uint32_t i = 0; i < records.size();) {
        std::int64_t plen = prefix_length(spec, records[i].size(), 1);
        std::uint32_t j = i + 1;
        while (j < records.size() && records[j].size() == records[i].size() &&
               std::equal(records[i].tokens.begin(), records[i].tokens.begin() + plen,
                          records[j].tokens.begin(), records[j].tokens.begin() + plen))
            ++j;
        RecordSet rep = records[i];
        rep.id = static_cast<std::uint32_t>(groups.size());
        reps.push_back(std::move(rep));
        groups.push_back({i, j});
        i = j;
    }

    ResolvedBitmap bitmap = resolve_bitmap(coll, options);
    BitmapStore store;
    PrefixIndex index = build_prefix_index(reps, spec, 1);
    if (bitmap.enabled) store = build_bitmaps(records, bitmap.config, bitmap.method);
    report.timings.index_s = seconds_since(total_start);

    ProbeOptions popts;
    popts.positional = true;

    // The bitmap filter runs only after group pairs are expanded to
    // individual records.
    auto expand = [&](const Group& ga, const Group& gb) {
        for (std::uint32_t a = ga.begin; a < ga.end; ++a) {
            for (std::uint32_t b = gb.begin; b < gb.end; ++b) {
                std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
                const RecordSet& rl = records[lo];
                const RecordSet& rh = records[hi];
                std::int64_t minov = required_overlap(spec, rl.size(), rh.size());
                if (bitmap.enabled) {
                    report.counters.bitmap_tested += 1;
                    if (bitmap_filter_skip(rh.size(), rl.size(), store.row(hi), store.row(lo),
                                           minov, bitmap.config)) {
                        report.counters.pruned_bitmap += 1;
                        continue;
                    }
                }
                report.counters.verified += 1;
                if (options.record_verified_pairs) report.verified_pairs.push_back({lo, hi});
                auto v = verify(rl, rh, minov);
                if (v.matched) {
                    report.counters.matched += 1;
                    report.pairs.push_back({lo, hi, v.overlap});
                }
            }
        }
    };

    CandidateScratch scratch;
    std::vector<std::uint32_t> cand_groups;
    for (const RecordSet& rep : reps) {
        const Group& ga = groups[rep.id];
        auto phase_start = Clock::now();

        // Probe at group level; filter evaluations happen once per group
        // pair. Pair-level counters are reconstructed from the outcome.
        JoinCounters group_level;
        probe(index, reps, rep, spec, popts, scratch, group_level, cand_groups);
        report.counters.filter_evaluations += group_level.filter_evaluations;
        report.timings.candidates_s += seconds_since(phase_start);

        phase_start = Clock::now();
        for (std::uint32_t gb_id : scratch.touched) {
            const Group& gb = groups[gb_id];
            std::uint64_t factor =
                static_cast<std::uint64_t>(ga.size()) * static_cast<std::uint64_t>(gb.size());
            switch (scratch.cause[gb_id]) {
                case PruneCause::Length:
                    report.counters.candidates += factor;
                    report.counters.pruned_length += factor;
                    break;
                case PruneCause::Positional:
                    report.counters.candidates += factor;
                    report.counters.pruned_positional += factor;
                    break;
                case PruneCause::None:
                    if (scratch.match_count[gb_id] >= 1) {
                        report.counters.candidates += factor;
                        expand(ga, gb);
                    }
                    break;
                default:
                    break;
            }
        }
        // Intra-group pairs share size and full prefix: candidates by
        // construction, verified directly.
        if (ga.size() >= 2) {
            std::uint64_t intra =
                static_cast<std::uint64_t>(ga.size()) * (ga.size() - 1) / 2;
            report.counters.candidates += intra;
            for (std::uint32_t a = ga.begin; a < ga.end; ++a) {
                for (std::uint32_t b = a + 1; b < ga.end; ++b) {
                    const RecordSet& rl = records[a];
                    const RecordSet& rh = records[b];
                    std::int64_t minov = required_overlap(spec, rl.size(), rh.size());
                    if (bitmap.enabled) {
                        report.counters.bitmap_tested += 1;
                        if (bitmap_filter_skip(rh.size(), rl.size(), store.row(b), store.row(a),
                                               minov, bitmap.config)) {
                            report.counters.pruned_bitmap += 1;
                            continue;
                        }
                    }
                    report.counters.verified += 1;
                    if (options.record_verified_pairs) report.verified_pairs.push_back({a, b});
                    auto v = verify(rl, rh, minov);
                    if (v.matched) {
                        report.counters.matched += 1;
                        report.pairs.push_back({a, b, v.overlap});
                    }
                }
            }
        }
        report.timings.verify_s += seconds_since(phase_start);
    }
    finish_pairs(report);
    report.timings.total_s = seconds_since(total_start);
    return report;
}

JoinReport adapt_join(const TokenizedCollection& coll, const JoinOptions& options) {
    JoinReport report;
    auto total_start = Clock::now();
    const auto& records = coll.records;
    const SimilaritySpec& spec = options.spec;
    const int ell_max = std::max(1, options.ell_max);

    ResolvedBitmap bitmap = resolve_bitmap(coll, options);
    BitmapStore store;
    PrefixIndex index = build_prefix_index(records, spec, ell_max);
    if (bitmap.enabled) store = build_bitmaps(records, bitmap.config, bitmap.method);
    report.timings.index_s = seconds_since(total_start);

    const double avg_verify_cost = coll.mean_size();

    // Walking one more prefix token costs roughly the extra postings touched.
    auto probe_cost = [&](const RecordSet& r, int ell) {
        std::int64_t plen = prefix_length(spec, r.size(), ell);
        std::uint64_t cost = 0;
        for (std::int64_t i = 0; i < plen; ++i)
            cost += index.postings(r.tokens[static_cast<std::size_t>(i)]).size();
        return cost;
    };

    CandidateScratch scratch;
    std::vector<std::uint32_t> candidates;
    std::vector<std::uint32_t> bitmap_pruned;
    for (const RecordSet& r : records) {
        auto phase_start = Clock::now();
        LengthWindow window = length_window(spec, r.size());

        // The shared-token requirement can never exceed the smallest overlap
        // an admissible partner needs.
        std::int64_t ell_cap = std::min<std::int64_t>(
            ell_max, required_overlap(spec, r.size(), std::max<std::int64_t>(window.lower, 0)));
        ell_cap = std::max<std::int64_t>(1, ell_cap);

        // First pass at ell = 1; the bitmap filter runs here, in the
        // candidate loop, and nowhere else.
        ProbeOptions popts;
        popts.ell = 1;
        if (bitmap.enabled) {
            popts.bitmaps = &store;
            popts.bitmap_cfg = &bitmap.config;
        }
        JoinCounters walk;
        probe(index, records, r, spec, popts, scratch, walk, candidates);
        report.counters.bitmap_tested += walk.bitmap_tested;
        report.counters.filter_evaluations += walk.filter_evaluations;

        bitmap_pruned.clear();
        for (std::uint32_t id : scratch.touched)
            if (scratch.cause[id] == PruneCause::Bitmap) bitmap_pruned.push_back(id);
        std::sort(bitmap_pruned.begin(), bitmap_pruned.end());

        int ell = 1;
        while (ell < ell_cap &&
               static_cast<double>(candidates.size()) * avg_verify_cost >
                   static_cast<double>(probe_cost(r, ell + 1))) {
            ++ell;
            ProbeOptions next_opts;
            next_opts.ell = ell;
            next_opts.bitmap_pruned_earlier = &bitmap_pruned;
            walk = JoinCounters{};
            probe(index, records, r, spec, next_opts, scratch, walk, candidates);
            report.counters.filter_evaluations += walk.filter_evaluations;
        }

        // Pair-level accounting comes from the final walk only; earlier
        // walks contributed evaluation counts above.
        report.counters.candidates += walk.candidates;
        report.counters.pruned_length += walk.pruned_length;
        report.counters.pruned_bitmap += walk.pruned_bitmap;
        report.timings.candidates_s += seconds_since(phase_start);

        phase_start = Clock::now();
        for (std::uint32_t sid : candidates) {
            report.counters.verified += 1;
            if (options.record_verified_pairs) report.verified_pairs.push_back({sid, r.id});
            auto v = verify(records[sid], r, scratch.min_overlap[sid]);
            if (v.matched) {
                report.counters.matched += 1;
                report.pairs.push_back({sid, r.id, v.overlap});
            }
        }
        report.timings.verify_s += seconds_since(phase_start);
    }
    finish_pairs(report);
    report.timings.total_s = seconds_since(total_start);
    return report;
}

}  // namespace

JoinReport run_join(const TokenizedCollection& collection, const JoinOptions& options) {
    switch (options.algorithm) {
        case JoinAlgorithm::Naive:
            return naive_join(collection, nullptr, options.spec);
        case JoinAlgorithm::AllPairs:
            return framework_join(collection, options, false, false);
        case JoinAlgorithm::PPJoin:
            return framework_join(collection, options, true, false);
        case JoinAlgorithm::PPJoinPlus:
            return framework_join(collection, options, true, true);
        case JoinAlgorithm::GroupJoin:
            return group_join(collection, options);
        case JoinAlgorithm::AdaptJoin:
            return adapt_join(collection, options);
        case JoinAlgorithm::ParBitmap:
            return parallel_bitmap_join(collection, options);
    }
    throw std::invalid_argument("unknown join algorithm");
}

}  // namespace ssj
