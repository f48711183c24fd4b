#pragma once

#include "bounds.hpp"
#include "collection.hpp"
#include "report.hpp"

namespace ssj {

enum class JoinAlgorithm { Naive, AllPairs, PPJoin, PPJoinPlus, GroupJoin, AdaptJoin, ParBitmap };

const char* join_algorithm_name(JoinAlgorithm a);

enum class BitmapPlacement { Default, Filter2, Filter3 };
enum class CutoffMode { Auto, Off, Explicit };

struct JoinOptions {
    JoinAlgorithm algorithm = JoinAlgorithm::AllPairs;
    SimilaritySpec spec = SimilaritySpec::make(SimFunction::Jaccard, Rational(1, 2));

    bool bitmap_enabled = false;
    BitmapMethod bitmap_method = BitmapMethod::Combined;
    int bitmap_bits = 0;  // 0: 64, raised to 128 when the median set size exceeds 64
    HashKind bitmap_hash = HashKind::Modulo;
    CutoffMode cutoff_mode = CutoffMode::Auto;
    std::int64_t cutoff_value = 0;
    BitmapPlacement placement = BitmapPlacement::Default;

    int suffix_depth = 2;      // PPJoin+ partition rounds
    int ell_max = 3;           // AdaptJoin prefix extension cap
    int workers = 1;           // ParBitmap
    int buffer_capacity = 2048;

    bool record_verified_pairs = false;
};

/// Verifies every pair; the ground-truth oracle for all other algorithms.
JoinReport naive_join(const TokenizedCollection& r_coll, const TokenizedCollection* s_coll,
                      const SimilaritySpec& spec);

/// Self-join dispatch over all algorithms.
JoinReport run_join(const TokenizedCollection& collection, const JoinOptions& options);

/// Fully resolved bitmap setup for one run (also used by the reporting side).
struct ResolvedBitmap {
    bool enabled = false;
    BitmapMethod method = BitmapMethod::Xor;  // Combined already resolved
    BitmapConfig config;
};

ResolvedBitmap resolve_bitmap(const TokenizedCollection& collection, const JoinOptions& options);

/// Jaccard-space equivalent of a normalized threshold (identity for Jaccard;
/// x / (2 - x) for Dice and, via the equal-size reading, Cosine).
Rational jaccard_space_threshold(const SimilaritySpec& spec);

}  // namespace ssj
