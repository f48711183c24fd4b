#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "types.hpp"

namespace ssj {

enum class BitmapMethod { Set, Xor, Next, Combined };

const char* bitmap_method_name(BitmapMethod m);

enum class HashKind { Modulo, Multiplicative };

/// No size guard: the filter is applied to every record.
constexpr std::int64_t kCutoffUnlimited = std::numeric_limits<std::int64_t>::max();

struct BitmapConfig {
    BitmapMethod method = BitmapMethod::Xor;
    int width = 64;  // bits; must be a positive multiple of 64
    HashKind hash = HashKind::Modulo;
    std::int64_t cutoff = kCutoffUnlimited;
    bool enabled = true;

    int words() const { return width / 64; }
    void validate() const;

    std::uint32_t hash_token(TokenId t) const {
        if (hash == HashKind::Multiplicative) {
            std::uint64_t h = static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ull;
            return static_cast<std::uint32_t>((h >> 33) % static_cast<std::uint64_t>(width));
        }
        return t % static_cast<std::uint32_t>(width);
    }
};

/// Fixed-width bit vector sketching one record's token set.
struct Bitmap {
    std::vector<std::uint64_t> words;
    int width = 0;

    std::int64_t popcount() const;
    bool bit(int i) const { return (words[i / 64] >> (i % 64)) & 1u; }
    friend bool operator==(const Bitmap& a, const Bitmap& b) = default;
};

/// Resolves Combined to a concrete method for the given Jaccard-space
/// threshold: Next for tau <= 0.56, Xor for tau >= 0.73, Set in between.
BitmapMethod resolve_combined(BitmapMethod method, const Rational& jaccard_threshold);

/// Builds one record's sketch into a caller-provided word row (zeroed here).
/// method must already be resolved (not Combined).
void build_bitmap_into(std::span<std::uint64_t> row, std::span<const TokenId> tokens,
                       const BitmapConfig& cfg, BitmapMethod method);

Bitmap bitmap_set(const RecordSet& s, const BitmapConfig& cfg);
Bitmap bitmap_xor(const RecordSet& s, const BitmapConfig& cfg);
Bitmap bitmap_next(const RecordSet& s, const BitmapConfig& cfg);
Bitmap bitmap_combined(const RecordSet& s, const BitmapConfig& cfg, const Rational& jaccard_threshold);

std::int64_t hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// floor((|r| + |s| - hamming) / 2), clamped at 0. Sound upper bound on
/// |r intersect s| for sketches built by the same config and method.
/// Throws std::invalid_argument on width mismatch.
std::int64_t overlap_upper_bound(const Bitmap& br, const Bitmap& bs, std::int64_t size_r,
                                 std::int64_t size_s);

std::int64_t overlap_upper_bound_words(std::span<const std::uint64_t> br,
                                       std::span<const std::uint64_t> bs, std::int64_t size_r,
                                       std::int64_t size_s);

/// The pruning predicate: true means the pair can be skipped. Bypassed
/// (returns false) whenever |r| exceeds the configured cutoff.
bool bitmap_filter_skip(std::int64_t size_r, std::int64_t size_s,
                        std::span<const std::uint64_t> bits_r, std::span<const std::uint64_t> bits_s,
                        std::int64_t minoverlap, const BitmapConfig& cfg);

inline bool bitmap_filter_skip(const RecordSet& r, const RecordSet& s, const Bitmap& br,
                               const Bitmap& bs, std::int64_t minoverlap, const BitmapConfig& cfg) {
    return bitmap_filter_skip(r.size(), s.size(), br.words, bs.words, minoverlap, cfg);
}

/// One flat, word-aligned sketch row per record.
struct BitmapStore {
    int width = 0;
    int words_per_record = 0;
    std::vector<std::uint64_t> data;

    std::span<const std::uint64_t> row(std::size_t record) const {
        return {data.data() + record * static_cast<std::size_t>(words_per_record),
                static_cast<std::size_t>(words_per_record)};
    }
};

BitmapStore build_bitmaps(const std::vector<RecordSet>& records, const BitmapConfig& cfg,
                          BitmapMethod resolved_method);

}  // namespace ssj
