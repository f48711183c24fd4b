#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <tuple>
#include <vector>

#include "bitmap.hpp"

namespace ssj {

/// Expected overlap upper bound for two disjoint sets of n random tokens
/// sketched at width b. Closed forms per method:
///   Set:  n + b*x^(2n) - b*x^n with x = 1 - 1/b
///   Xor:  n - (b/4) * (1 - (1 - 2/b)^(2n))
///   Next: min(n^2 / b, n)
double expected_bound(BitmapMethod method, int b, std::int64_t n);

/// Mean simulated bound over `trials` random disjoint token pairs of n tokens
/// each (tokens drawn from a 64-bit universe, hashed t mod b). Deterministic
/// for a given seed.
double monte_carlo_bound(BitmapMethod method, int b, std::int64_t n, std::int64_t trials,
                         std::uint64_t seed);

enum class ThresholdSpace { NormalizedOverlap, Jaccard };

/// Returned when every set size keeps the expected bound under the
/// threshold (the filter never needs bypassing).
constexpr std::int64_t kCutoffUnbounded = std::numeric_limits<std::int64_t>::max();

/// Largest n at which the normalized expected bound stays at or below the
/// threshold; beyond it the filter loses its discriminating power. Jaccard
/// thresholds are first converted to normalized-overlap space through the
/// equal-size identity o/n <-> o/(2n - o). Returns 0 when no n >= 1
/// qualifies.
std::int64_t cutoff(BitmapMethod method, int b, const Rational& threshold, ThresholdSpace space);

/// Largest n with expected_bound(b, n) <= tau for an absolute overlap
/// threshold (used when the join runs plain overlap similarity).
std::int64_t cutoff_for_overlap(BitmapMethod method, int b, std::int64_t tau);

/// Memoized cutoff lookups keyed by (method, width, threshold).
class CutoffTable {
public:
    std::int64_t get(BitmapMethod method, int b, const Rational& threshold, ThresholdSpace space);

private:
    std::map<std::tuple<int, int, std::int64_t, std::int64_t, int>, std::int64_t> entries_;
};

struct CurvePoint {
    BitmapMethod method;
    int b;
    std::int64_t n;
    double expected;
    double normalized;     // expected / n
    double jaccard_equiv;  // normalized / (2 - normalized)
};

std::vector<CurvePoint> expected_bound_curves(const std::vector<BitmapMethod>& methods,
                                              const std::vector<int>& widths, std::int64_t n_begin,
                                              std::int64_t n_end);

/// CSV with header method,b,n,expected,normalized,jaccard_equiv.
void write_curves_csv(const std::vector<CurvePoint>& points, std::ostream& out);

}  // namespace ssj
