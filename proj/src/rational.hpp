#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ssj {

/// Exact fraction with a positive denominator, kept in lowest terms.
/// All threshold decisions in the engine go through integer cross
/// multiplication on these; no similarity comparison ever touches floating
/// point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

/// Parses "p/q", a plain integer, or a decimal such as "0.75" (at most nine
/// fractional digits). Throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& text);

/// ceil(a / b) for a >= 0, b > 0 without intermediate overflow.
std::int64_t ceil_div(__int128 a, __int128 b);

/// floor(a / b) for a >= 0, b > 0.
std::int64_t floor_div(__int128 a, __int128 b);

/// Largest s with s * s <= v.
std::uint64_t isqrt_floor(unsigned __int128 v);

/// Smallest s with s * s >= v.
std::uint64_t isqrt_ceil(unsigned __int128 v);

}  // namespace ssj
