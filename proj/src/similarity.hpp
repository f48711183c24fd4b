#pragma once

#include <span>

#include "types.hpp"

namespace ssj {

/// Exact similarity value. For Overlap/Jaccard/Dice this is the plain
/// fraction num/den. Cosine similarity is irrational in general, so it is
/// carried in squared form (num = overlap^2, den = |r|*|s|) and compared
/// against the squared threshold.
struct SimValue {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool squared = false;

    double to_double() const;
};

/// Exact similarity of two canonical records. Two empty sets under a
/// normalized function are defined as similarity 0.
SimValue similarity(SimFunction f, const RecordSet& r, const RecordSet& s);

/// Exact test sim(r, s) >= spec.threshold via integer cross multiplication.
bool meets_threshold(const SimValue& value, const SimilaritySpec& spec);

/// Minimum integer overlap that makes sim >= threshold possible for the
/// given sizes. Computed with exact integer/rational arithmetic; Cosine uses
/// the smallest o with o^2 * q^2 >= p^2 * |r| * |s| (integer square root).
std::int64_t equivalent_overlap(const SimilaritySpec& spec, std::int64_t size_r, std::int64_t size_s);

/// equivalent_overlap clamped to >= 1. Joins use this as the verification
/// requirement so that a pair of empty sets never matches.
std::int64_t required_overlap(const SimilaritySpec& spec, std::int64_t size_r, std::int64_t size_s);

/// Admissible |s| interval for a record of size_r (lower rounded up, upper
/// rounded down; Overlap has no upper bound).
LengthWindow length_window(const SimilaritySpec& spec, std::int64_t size_r);

/// Probing/indexing prefix length, clamped to [0, size_r]. ell = 1 gives the
/// standard prefix; larger ell extends it by ell - 1 tokens so that matching
/// pairs share at least ell prefix tokens.
std::int64_t prefix_length(const SimilaritySpec& spec, std::int64_t size_r, int ell = 1);

struct VerifyResult {
    bool matched = false;
    std::int64_t overlap = 0;
};

/// Merge-scan intersection count with early termination: gives up as soon as
/// the remaining tokens cannot reach minoverlap. On early exit the returned
/// overlap is the partial count at the abort point, not the exact
/// intersection size.
VerifyResult verify(const RecordSet& r, const RecordSet& s, std::int64_t minoverlap);

/// Plain intersection size (no early exit); used where the exact overlap of
/// a known-matching pair is reported.
std::int64_t intersection_size(std::span<const TokenId> a, std::span<const TokenId> b);

}  // namespace ssj
