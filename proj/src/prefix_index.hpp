#pragma once

#include <cstdint>
#include <vector>

#include "bitmap.hpp"
#include "similarity.hpp"
#include "types.hpp"

namespace ssj {

struct Posting {
    std::uint32_t id;   // record id (lists stay size-ordered because ids are)
    std::uint32_t pos;  // 0-based token position inside the record
};

/// Inverted index over record prefixes. Posting lists are ordered by record
/// id, which in a canonical collection equals size order, so a walk can stop
/// at the first entry beyond the length window.
struct PrefixIndex {
    std::vector<std::vector<Posting>> lists;
    int ell = 1;

    const std::vector<Posting>& postings(TokenId t) const {
        static const std::vector<Posting> empty;
        return t < lists.size() ? lists[t] : empty;
    }
};

PrefixIndex build_prefix_index(const std::vector<RecordSet>& records, const SimilaritySpec& spec,
                               int ell = 1);

inline bool length_filter_admit(std::int64_t size_s, const LengthWindow& window) {
    return window.contains(size_s);
}

/// Tightest remaining-overlap bound once a shared token is located at
/// pos_r/pos_s (1-based): overlap so far plus whatever the shorter remainder
/// allows.
inline std::int64_t positional_upper_bound(std::int64_t size_r, std::int64_t size_s,
                                           std::int64_t pos_r, std::int64_t pos_s,
                                           std::int64_t overlap_so_far) {
    return overlap_so_far + std::min(size_r - pos_r, size_s - pos_s);
}

/// Divide-and-conquer overlap bound on the token ranges r[r_from..] and
/// s[s_from..]: picks the middle token of r's range, binary-searches it in
/// s's range and recurses into both halves up to `depth` partition rounds.
/// Returns matched plus the suffix bound; the caller prunes when the result
/// is below the required overlap.
std::int64_t suffix_filter_bound(const RecordSet& r, const RecordSet& s, std::int64_t r_from,
                                 std::int64_t s_from, std::int64_t matched, int depth);

enum class PruneCause : std::uint8_t { None = 0, Length, Positional, Suffix, Bitmap };

/// Per-probe candidate accumulator. Epoch stamps make the per-record reset
/// O(1); the arrays are sized to the collection once.
struct CandidateScratch {
    std::vector<std::uint64_t> epoch;
    std::vector<std::int64_t> match_count;
    std::vector<std::int64_t> min_overlap;
    std::vector<PruneCause> cause;
    std::vector<std::uint32_t> touched;
    std::uint64_t current = 0;

    void ensure(std::size_t n) {
        if (epoch.size() < n) {
            epoch.resize(n, 0);
            match_count.resize(n, 0);
            min_overlap.resize(n, 0);
            cause.resize(n, PruneCause::None);
        }
    }
    void next_epoch() {
        ++current;
        touched.clear();
    }
};

struct JoinCounters {
    std::uint64_t candidates = 0;
    std::uint64_t pruned_length = 0;
    std::uint64_t pruned_positional = 0;
    std::uint64_t pruned_suffix = 0;
    std::uint64_t pruned_bitmap = 0;
    std::uint64_t bitmap_tested = 0;       // individual predicate evaluations
    std::uint64_t filter_evaluations = 0;  // candidate-loop predicate evaluations
    std::uint64_t verified = 0;
    std::uint64_t matched = 0;

    std::uint64_t pruned_total() const {
        return pruned_length + pruned_positional + pruned_suffix + pruned_bitmap;
    }
};

struct ProbeOptions {
    int ell = 1;                  // candidates must share at least ell prefix tokens
    bool positional = false;
    bool suffix = false;
    int suffix_depth = 2;
    bool self_join = true;        // emit only candidates with id < probe id
    // Bitmap filter in the candidate loop (filter2); null disables.
    const BitmapStore* bitmaps = nullptr;
    const BitmapConfig* bitmap_cfg = nullptr;
    // Pairs already pruned by an earlier bitmap pass (sorted ids); killed on
    // first encounter and attributed to the bitmap counter.
    const std::vector<std::uint32_t>* bitmap_pruned_earlier = nullptr;
};

/// Candidate generation for one probe record: walks the prefix postings with
/// length-filter early exit, applies the configured filter chain, and emits
/// each surviving candidate once. Survivors keep their match counts and
/// required overlaps in the scratch.
void probe(const PrefixIndex& index, const std::vector<RecordSet>& records, const RecordSet& r,
           const SimilaritySpec& spec, const ProbeOptions& opts, CandidateScratch& scratch,
           JoinCounters& counters, std::vector<std::uint32_t>& out_candidates);

}  // namespace ssj
