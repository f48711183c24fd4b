#include "bounds.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace ssj {

double expected_bound(BitmapMethod method, int b, std::int64_t n) {
    if (b < 1) throw std::invalid_argument("bitmap width must be >= 1");
    if (n < 0) throw std::invalid_argument("token count must be >= 0");
    const double bn = static_cast<double>(b);
    const double nn = static_cast<double>(n);
    switch (method) {
        case BitmapMethod::Set: {
            // exp/log1p keeps x^n accurate for large widths and counts.
            double log_x = std::log1p(-1.0 / bn);
            return nn + bn * std::exp(2.0 * nn * log_x) - bn * std::exp(nn * log_x);
        }
        case BitmapMethod::Xor: {
            if (b == 1) return nn - 0.25 * (1.0 - ((2 * n) % 2 == 0 ? 1.0 : -1.0));
            double log_x = std::log1p(-2.0 / bn);
            return nn - bn / 4.0 * (1.0 - std::exp(2.0 * nn * log_x));
        }
        case BitmapMethod::Next:
            return std::min(nn * nn / bn, nn);
        case BitmapMethod::Combined:
            break;
    }
    throw std::invalid_argument("expected_bound needs a concrete method");
}

double monte_carlo_bound(BitmapMethod method, int b, std::int64_t n, std::int64_t trials,
                         std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    BitmapConfig cfg;
    cfg.width = b;
    cfg.validate();
    std::mt19937_64 rng(seed);

    const std::size_t count = static_cast<std::size_t>(n);
    std::vector<TokenId> tokens_r(count), tokens_s(count);
    std::vector<std::uint64_t> row_r(cfg.words()), row_s(cfg.words());
    std::unordered_set<TokenId> seen;
    seen.reserve(2 * count);

    double total = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        seen.clear();
        // 2n distinct tokens from a large universe, split into two disjoint
        // sets; the hash sees effectively uniform residues.
        auto draw = [&]() {
            TokenId v;
            do { v = static_cast<TokenId>(rng()); } while (!seen.insert(v).second);
            return v;
        };
        for (std::size_t i = 0; i < count; ++i) tokens_r[i] = draw();
        for (std::size_t i = 0; i < count; ++i) tokens_s[i] = draw();
        build_bitmap_into(row_r, tokens_r, cfg, method);
        build_bitmap_into(row_s, tokens_s, cfg, method);
        // Exact half-slack, not the integer-rounded bound: the analytic
        // expectations describe the un-floored quantity, and rounding would
        // bias the mean by up to a quarter token at odd distances.
        total += static_cast<double>(2 * n - hamming_distance(row_r, row_s)) / 2.0;
    }
    return total / static_cast<double>(trials);
}

namespace {

// Largest n >= 1 with pred(n) true, assuming pred is monotone (true then
// false). Returns 0 if pred(1) is false and kCutoffUnbounded if pred never
// turns false below the cap.
std::int64_t largest_true(const std::function<bool(std::int64_t)>& pred) {
    constexpr std::int64_t kCap = std::int64_t{1} << 26;
    if (!pred(1)) return 0;
    std::int64_t lo = 1, hi = 2;
    while (hi <= kCap && pred(hi)) {
        lo = hi;
        hi *= 2;
    }
    if (hi > kCap) return kCutoffUnbounded;
    while (lo + 1 < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

std::int64_t cutoff(BitmapMethod method, int b, const Rational& threshold, ThresholdSpace space) {
    if (threshold.num <= 0 || Rational(1, 1) < threshold)
        throw std::invalid_argument("cutoff threshold must be in (0, 1]");
    // o/n = t and Jaccard o/(2n-o) = j meet at t = 2j/(1+j).
    Rational tau = space == ThresholdSpace::Jaccard
                       ? Rational(2 * threshold.num, threshold.num + threshold.den)
                       : threshold;
    const double tau_d = tau.to_double();
    return largest_true([&](std::int64_t n) {
        return expected_bound(method, b, n) / static_cast<double>(n) <= tau_d;
    });
}

std::int64_t cutoff_for_overlap(BitmapMethod method, int b, std::int64_t tau) {
    if (tau < 1) throw std::invalid_argument("overlap threshold must be >= 1");
    return largest_true([&](std::int64_t n) {
        return expected_bound(method, b, n) <= static_cast<double>(tau);
    });
}

std::int64_t CutoffTable::get(BitmapMethod method, int b, const Rational& threshold,
                              ThresholdSpace space) {
    auto key = std::make_tuple(static_cast<int>(method), b, threshold.num, threshold.den,
                               static_cast<int>(space));
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second;
    std::int64_t value = cutoff(method, b, threshold, space);
    entries_.emplace(key, value);
    return value;
}

std::vector<CurvePoint> expected_bound_curves(const std::vector<BitmapMethod>& methods,
                                              const std::vector<int>& widths, std::int64_t n_begin,
                                              std::int64_t n_end) {
    std::vector<CurvePoint> points;
    for (BitmapMethod m : methods) {
        for (int b : widths) {
            for (std::int64_t n = n_begin; n <= n_end; ++n) {
                double e = expected_bound(m, b, n);
                double normalized = n == 0 ? 0.0 : e / static_cast<double>(n);
                points.push_back({m, b, n, e, normalized, normalized / (2.0 - normalized)});
            }
        }
    }
    return points;
}

void write_curves_csv(const std::vector<CurvePoint>& points, std::ostream& out) {
    out << "method,b,n,expected,normalized,jaccard_equiv\n";
    char buf[160];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%.10g,%.10g,%.10g\n", bitmap_method_name(p.method),
                      p.b, static_cast<long long>(p.n), p.expected, p.normalized, p.jaccard_equiv);
        out << buf;
    }
}

}  // namespace ssj
