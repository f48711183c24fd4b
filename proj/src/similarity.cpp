#include "similarity.hpp"

#include <algorithm>
#include <cmath>

namespace ssj {

const char* sim_function_name(SimFunction f) {
    switch (f) {
        case SimFunction::Overlap: return "overlap";
        case SimFunction::Jaccard: return "jaccard";
        case SimFunction::Cosine: return "cosine";
        case SimFunction::Dice: return "dice";
    }
    return "?";
}

SimilaritySpec SimilaritySpec::make(SimFunction f, Rational threshold) {
    if (f == SimFunction::Overlap) {
        if (threshold.den != 1 || threshold.num < 1)
            throw std::invalid_argument("overlap threshold must be a positive integer");
    } else {
        if (threshold.num <= 0 || Rational(1, 1) < threshold)
            throw std::invalid_argument("normalized threshold must be in (0, 1]");
    }
    return SimilaritySpec{f, threshold};
}

double SimValue::to_double() const {
    double v = static_cast<double>(num) / static_cast<double>(den);
    return squared ? std::sqrt(v) : v;
}

std::int64_t intersection_size(std::span<const TokenId> a, std::span<const TokenId> b) {
    std::size_t i = 0, j = 0;
    std::int64_t overlap = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++overlap; ++i; ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return overlap;
}

SimValue similarity(SimFunction f, const RecordSet& r, const RecordSet& s) {
    std::int64_t o = intersection_size(r.tokens, s.tokens);
    std::int64_t nr = r.size(), ns = s.size();
    SimValue v;
    switch (f) {
        case SimFunction::Overlap:
            v.num = o; v.den = 1;
            break;
        case SimFunction::Jaccard: {
            std::int64_t uni = nr + ns - o;
            if (uni == 0) { v.num = 0; v.den = 1; break; }
            std::int64_t g = std::gcd(o, uni);
            v.num = o / g; v.den = uni / g;
            break;
        }
        case SimFunction::Cosine: {
            std::int64_t prod = nr * ns;
            if (prod == 0) { v.num = 0; v.den = 1; v.squared = true; break; }
            std::int64_t g = std::gcd(o * o, prod);
            v.num = o * o / g; v.den = prod / g;
            v.squared = true;
            break;
        }
        case SimFunction::Dice: {
            std::int64_t total = nr + ns;
            if (total == 0) { v.num = 0; v.den = 1; break; }
            std::int64_t g = std::gcd(2 * o, total);
            v.num = 2 * o / g; v.den = total / g;
            break;
        }
    }
    return v;
}

bool meets_threshold(const SimValue& value, const SimilaritySpec& spec) {
    const Rational& t = spec.threshold;
    if (value.squared) {
        // value.num/value.den holds the squared similarity.
        return static_cast<__int128>(value.num) * t.den * t.den >=
               static_cast<__int128>(value.den) * t.num * t.num;
    }
    return static_cast<__int128>(value.num) * t.den >= static_cast<__int128>(value.den) * t.num;
}

std::int64_t equivalent_overlap(const SimilaritySpec& spec, std::int64_t size_r, std::int64_t size_s) {
    const std::int64_t p = spec.threshold.num;
    const std::int64_t q = spec.threshold.den;
    switch (spec.function) {
        case SimFunction::Overlap:
            return p;
        case SimFunction::Jaccard:
            return ceil_div(static_cast<__int128>(p) * (size_r + size_s), p + q);
        case SimFunction::Dice:
            return ceil_div(static_cast<__int128>(p) * (size_r + size_s), 2 * q);
        case SimFunction::Cosine: {
            unsigned __int128 target = static_cast<unsigned __int128>(p) * p;
            target *= static_cast<unsigned __int128>(size_r) * size_s;
            std::uint64_t root = isqrt_ceil(target);  // smallest o*q with (o*q)^2 >= target
            return ceil_div(root, q);
        }
    }
    return 0;
}

std::int64_t required_overlap(const SimilaritySpec& spec, std::int64_t size_r, std::int64_t size_s) {
    return std::max<std::int64_t>(1, equivalent_overlap(spec, size_r, size_s));
}

LengthWindow length_window(const SimilaritySpec& spec, std::int64_t size_r) {
    const std::int64_t p = spec.threshold.num;
    const std::int64_t q = spec.threshold.den;
    LengthWindow w;
    switch (spec.function) {
        case SimFunction::Overlap:
            w.lower = p;
            w.upper = kUnboundedSize;
            break;
        case SimFunction::Jaccard:
            w.lower = ceil_div(static_cast<__int128>(size_r) * p, q);
            w.upper = p == 0 ? kUnboundedSize : floor_div(static_cast<__int128>(size_r) * q, p);
            break;
        case SimFunction::Cosine:
            w.lower = ceil_div(static_cast<__int128>(size_r) * p * p, static_cast<__int128>(q) * q);
            w.upper = floor_div(static_cast<__int128>(size_r) * q * q, static_cast<__int128>(p) * p);
            break;
        case SimFunction::Dice:
            // tau_d / (2 - tau_d) = p / (2q - p)
            w.lower = ceil_div(static_cast<__int128>(size_r) * p, 2 * q - p);
            w.upper = floor_div(static_cast<__int128>(size_r) * (2 * q - p), p);
            break;
    }
    if (w.lower < 0) w.lower = 0;
    return w;
}

std::int64_t prefix_length(const SimilaritySpec& spec, std::int64_t size_r, int ell) {
    const std::int64_t p = spec.threshold.num;
    const std::int64_t q = spec.threshold.den;
    std::int64_t base = 0;
    switch (spec.function) {
        case SimFunction::Overlap:
            base = size_r - p + 1;
            break;
        case SimFunction::Jaccard:
            base = floor_div(static_cast<__int128>(size_r) * (q - p), q) + 1;
            break;
        case SimFunction::Cosine:
            base = floor_div(static_cast<__int128>(size_r) * (static_cast<__int128>(q) * q - static_cast<__int128>(p) * p),
                             static_cast<__int128>(q) * q) +
                   1;
            break;
        case SimFunction::Dice:
            base = floor_div(static_cast<__int128>(size_r) * (2 * q - 2 * p), 2 * q - p) + 1;
            break;
    }
    std::int64_t len = base + (ell - 1);
    return std::clamp<std::int64_t>(len, 0, size_r);
}

VerifyResult verify(const RecordSet& r, const RecordSet& s, std::int64_t minoverlap) {
    const auto& a = r.tokens;
    const auto& b = s.tokens;
    std::size_t i = 0, j = 0;
    std::int64_t overlap = 0;
    while (i < a.size() && j < b.size()) {
        std::int64_t best = overlap + std::min<std::int64_t>(a.size() - i, b.size() - j);
        if (best < minoverlap) return {false, overlap};
        if (a[i] == b[j]) {
            ++overlap; ++i; ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return {overlap >= minoverlap, overlap};
}

}  // namespace ssj
