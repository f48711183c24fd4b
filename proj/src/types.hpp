#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rational.hpp"

namespace ssj {

/// Dense token identifier. Within one collection, ids are assigned
/// contiguously from 0 in ascending order of global token frequency
/// (rarest token gets the smallest id, ties broken by the raw token text).
using TokenId = std::uint32_t;

/// One record: a set of tokens stored as a strictly increasing id sequence.
struct RecordSet {
    std::uint32_t id = 0;
    std::vector<TokenId> tokens;

    std::int64_t size() const { return static_cast<std::int64_t>(tokens.size()); }
};

enum class SimFunction { Overlap, Jaccard, Cosine, Dice };

const char* sim_function_name(SimFunction f);

/// Similarity function plus its exact threshold. Normalized functions
/// (Jaccard/Cosine/Dice) require 0 < threshold <= 1; Overlap requires a
/// positive integer.
struct SimilaritySpec {
    SimFunction function = SimFunction::Jaccard;
    Rational threshold{1, 2};

    static SimilaritySpec make(SimFunction f, Rational threshold);
};

constexpr std::int64_t kUnboundedSize = std::numeric_limits<std::int64_t>::max();

/// Admissible partner-size interval for one record size: partners outside
/// the window are provably below threshold.
struct LengthWindow {
    std::int64_t lower = 0;
    std::int64_t upper = kUnboundedSize;

    bool contains(std::int64_t size) const { return size >= lower && size <= upper; }
    bool bounded_above() const { return upper != kUnboundedSize; }
};

}  // namespace ssj
