#include "bitmap.hpp"

#include <bit>
#include <stdexcept>

namespace ssj {

const char* bitmap_method_name(BitmapMethod m) {
    switch (m) {
        case BitmapMethod::Set: return "set";
        case BitmapMethod::Xor: return "xor";
        case BitmapMethod::Next: return "next";
        case BitmapMethod::Combined: return "combined";
    }
    return "?";
}

void BitmapConfig::validate() const {
    if (width <= 0 || width % 64 != 0)
        throw std::invalid_argument("bitmap width must be a positive multiple of 64");
    if (cutoff < 0) throw std::invalid_argument("bitmap cutoff must be >= 0");
}

std::int64_t Bitmap::popcount() const {
    std::int64_t n = 0;
    for (std::uint64_t w : words) n += std::popcount(w);
    return n;
}

BitmapMethod resolve_combined(BitmapMethod method, const Rational& jaccard_threshold) {
    if (method != BitmapMethod::Combined) return method;
    const Rational& t = jaccard_threshold;
    if (t <= Rational(56, 100)) return BitmapMethod::Next;
    if (t >= Rational(73, 100)) return BitmapMethod::Xor;
    return BitmapMethod::Set;
}

namespace {

void build_next(std::span<std::uint64_t> row, std::span<const TokenId> tokens,
                const BitmapConfig& cfg) {
    const int nwords = cfg.words();
    if (static_cast<std::int64_t>(tokens.size()) >= cfg.width) {
        for (auto& w : row) w = ~0ull;
        return;
    }
    for (TokenId t : tokens) {
        int bit = static_cast<int>(cfg.hash_token(t));
        int word = bit / 64;
        std::uint64_t free_bits = ~row[word] & (~0ull << (bit % 64));
        // Chase the next unset bit circularly, skipping full words. After a
        // full cycle the bitmap is saturated and the token is a no-op.
        for (int step = 0; step <= nwords; ++step) {
            if (free_bits) {
                row[word] |= 1ull << std::countr_zero(free_bits);
                break;
            }
            word = (word + 1) % nwords;
            free_bits = ~row[word];
        }
    }
}

}  // namespace

void build_bitmap_into(std::span<std::uint64_t> row, std::span<const TokenId> tokens,
                       const BitmapConfig& cfg, BitmapMethod method) {
    for (auto& w : row) w = 0;
    switch (method) {
        case BitmapMethod::Set:
            for (TokenId t : tokens) {
                std::uint32_t bit = cfg.hash_token(t);
                row[bit / 64] |= 1ull << (bit % 64);
            }
            break;
        case BitmapMethod::Xor:
            for (TokenId t : tokens) {
                std::uint32_t bit = cfg.hash_token(t);
                row[bit / 64] ^= 1ull << (bit % 64);
            }
            break;
        case BitmapMethod::Next:
            build_next(row, tokens, cfg);
            break;
        case BitmapMethod::Combined:
            throw std::invalid_argument("combined method must be resolved before building");
    }
}

namespace {

Bitmap build_one(const RecordSet& s, const BitmapConfig& cfg, BitmapMethod method) {
    cfg.validate();
    Bitmap b;
    b.width = cfg.width;
    b.words.assign(static_cast<std::size_t>(cfg.words()), 0);
    build_bitmap_into(b.words, s.tokens, cfg, method);
    return b;
}

}  // namespace

Bitmap bitmap_set(const RecordSet& s, const BitmapConfig& cfg) {
    return build_one(s, cfg, BitmapMethod::Set);
}

Bitmap bitmap_xor(const RecordSet& s, const BitmapConfig& cfg) {
    return build_one(s, cfg, BitmapMethod::Xor);
}

Bitmap bitmap_next(const RecordSet& s, const BitmapConfig& cfg) {
    return build_one(s, cfg, BitmapMethod::Next);
}

Bitmap bitmap_combined(const RecordSet& s, const BitmapConfig& cfg, const Rational& jaccard_threshold) {
    return build_one(s, cfg, resolve_combined(BitmapMethod::Combined, jaccard_threshold));
}

std::int64_t hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::popcount(a[i] ^ b[i]);
    return d;
}

std::int64_t overlap_upper_bound_words(std::span<const std::uint64_t> br,
                                       std::span<const std::uint64_t> bs, std::int64_t size_r,
                                       std::int64_t size_s) {
    std::int64_t slack = size_r + size_s - hamming_distance(br, bs);
    return slack <= 0 ? 0 : slack / 2;
}

std::int64_t overlap_upper_bound(const Bitmap& br, const Bitmap& bs, std::int64_t size_r,
                                 std::int64_t size_s) {
    if (br.width != bs.width) throw std::invalid_argument("bitmap width mismatch");
    return overlap_upper_bound_words(br.words, bs.words, size_r, size_s);
}

bool bitmap_filter_skip(std::int64_t size_r, std::int64_t size_s,
                        std::span<const std::uint64_t> bits_r, std::span<const std::uint64_t> bits_s,
                        std::int64_t minoverlap, const BitmapConfig& cfg) {
    if (size_r > cfg.cutoff) return false;
    return overlap_upper_bound_words(bits_r, bits_s, size_r, size_s) < minoverlap;
}

BitmapStore build_bitmaps(const std::vector<RecordSet>& records, const BitmapConfig& cfg,
                          BitmapMethod resolved_method) {
    cfg.validate();
    BitmapStore store;
    store.width = cfg.width;
    store.words_per_record = cfg.words();
    store.data.assign(records.size() * static_cast<std::size_t>(store.words_per_record), 0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::span<std::uint64_t> row{store.data.data() + i * static_cast<std::size_t>(store.words_per_record),
                                     static_cast<std::size_t>(store.words_per_record)};
        build_bitmap_into(row, records[i].tokens, cfg, resolved_method);
    }
    return store;
}

}  // namespace ssj
