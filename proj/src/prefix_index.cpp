#include "prefix_index.hpp"

#include <algorithm>

namespace ssj {

PrefixIndex build_prefix_index(const std::vector<RecordSet>& records, const SimilaritySpec& spec,
                               int ell) {
    PrefixIndex index;
    index.ell = ell;
    TokenId max_id = 0;
    bool any = false;
    for (const auto& r : records) {
        if (!r.tokens.empty()) {
            max_id = std::max(max_id, r.tokens.back());
            any = true;
        }
    }
    if (any) index.lists.resize(static_cast<std::size_t>(max_id) + 1);
    for (const auto& r : records) {
        std::int64_t plen = prefix_length(spec, r.size(), ell);
        for (std::int64_t i = 0; i < plen; ++i)
            index.lists[r.tokens[static_cast<std::size_t>(i)]].push_back(
                {r.id, static_cast<std::uint32_t>(i)});
    }
    return index;
}

namespace {

std::int64_t partition_bound(std::span<const TokenId> a, std::span<const TokenId> b, int depth) {
    std::int64_t cap = static_cast<std::int64_t>(std::min(a.size(), b.size()));
    if (cap == 0 || depth <= 0) return cap;
    std::size_t mid = a.size() / 2;
    TokenId probe_token = a[mid];
    auto it = std::lower_bound(b.begin(), b.end(), probe_token);
    std::size_t split = static_cast<std::size_t>(it - b.begin());
    std::int64_t found = (split < b.size() && b[split] == probe_token) ? 1 : 0;
    std::int64_t left = partition_bound(a.subspan(0, mid), b.subspan(0, split), depth - 1);
    std::int64_t right = partition_bound(a.subspan(mid + 1), b.subspan(split + found), depth - 1);
    return std::min(cap, left + found + right);
}

}  // namespace

std::int64_t suffix_filter_bound(const RecordSet& r, const RecordSet& s, std::int64_t r_from,
                                 std::int64_t s_from, std::int64_t matched, int depth) {
    std::span<const TokenId> a{r.tokens.data() + r_from, static_cast<std::size_t>(r.size() - r_from)};
    std::span<const TokenId> b{s.tokens.data() + s_from, static_cast<std::size_t>(s.size() - s_from)};
    return matched + partition_bound(a, b, depth);
}

void probe(const PrefixIndex& index, const std::vector<RecordSet>& records, const RecordSet& r,
           const SimilaritySpec& spec, const ProbeOptions& opts, CandidateScratch& scratch,
           JoinCounters& counters, std::vector<std::uint32_t>& out_candidates) {
    out_candidates.clear();
    scratch.ensure(records.size());
    scratch.next_epoch();

    const LengthWindow window = length_window(spec, r.size());
    const std::int64_t prefix_r = prefix_length(spec, r.size(), opts.ell);
    const bool bitmap_on = opts.bitmaps != nullptr && opts.bitmap_cfg != nullptr;

    for (std::int64_t i = 0; i < prefix_r; ++i) {
        TokenId t = r.tokens[static_cast<std::size_t>(i)];
        for (const Posting& post : index.postings(t)) {
            if (opts.self_join && post.id >= r.id) break;  // ids ascend with size
            const RecordSet& s = records[post.id];
            if (s.size() > window.upper) break;            // size-ordered list: nothing later fits

            // The index may hold a longer prefix than the current ell uses.
            if (post.pos >= prefix_length(spec, s.size(), opts.ell)) continue;

            bool first = scratch.epoch[post.id] != scratch.current;
            if (first) {
                scratch.epoch[post.id] = scratch.current;
                scratch.match_count[post.id] = 0;
                scratch.cause[post.id] = PruneCause::None;
                scratch.min_overlap[post.id] = required_overlap(spec, r.size(), s.size());
                scratch.touched.push_back(post.id);

                counters.filter_evaluations += 1;
                if (!length_filter_admit(s.size(), window)) {
                    scratch.cause[post.id] = PruneCause::Length;
                    counters.pruned_length += 1;
                    continue;
                }
                if (opts.bitmap_pruned_earlier &&
                    std::binary_search(opts.bitmap_pruned_earlier->begin(),
                                       opts.bitmap_pruned_earlier->end(), post.id)) {
                    scratch.cause[post.id] = PruneCause::Bitmap;
                    counters.pruned_bitmap += 1;
                    continue;
                }
            } else if (scratch.cause[post.id] != PruneCause::None) {
                continue;
            }

            if (bitmap_on) {
                counters.bitmap_tested += 1;
                if (bitmap_filter_skip(r.size(), s.size(), opts.bitmaps->row(r.id),
                                       opts.bitmaps->row(post.id), scratch.min_overlap[post.id],
                                       *opts.bitmap_cfg)) {
                    scratch.cause[post.id] = PruneCause::Bitmap;
                    counters.pruned_bitmap += 1;
                    continue;
                }
            }

            const std::int64_t count = scratch.match_count[post.id];
            if (opts.positional) {
                counters.filter_evaluations += 1;
                std::int64_t bound =
                    positional_upper_bound(r.size(), s.size(), i + 1, post.pos + 1, count + 1);
                if (bound < scratch.min_overlap[post.id]) {
                    scratch.cause[post.id] = PruneCause::Positional;
                    counters.pruned_positional += 1;
                    continue;
                }
            }
            if (opts.suffix && count == 0) {
                counters.filter_evaluations += 1;
                std::int64_t bound =
                    suffix_filter_bound(r, s, i + 1, post.pos + 1, 1, opts.suffix_depth);
                if (bound < scratch.min_overlap[post.id]) {
                    scratch.cause[post.id] = PruneCause::Suffix;
                    counters.pruned_suffix += 1;
                    continue;
                }
            }
            scratch.match_count[post.id] = count + 1;
        }
    }

    // A pair becomes a candidate once it is either pruned by a filter or
    // survives with enough prefix matches; pairs below the ell requirement
    // were never generated.
    for (std::uint32_t id : scratch.touched) {
        if (scratch.cause[id] != PruneCause::None) {
            counters.candidates += 1;
        } else if (scratch.match_count[id] >= opts.ell) {
            counters.candidates += 1;
            out_candidates.push_back(id);
        }
    }
}

}  // namespace ssj
