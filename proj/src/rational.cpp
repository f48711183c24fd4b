#include "rational.hpp"

#include <cctype>
#include <cstdlib>

namespace ssj {

namespace {

std::int64_t parse_digits(const std::string& s, const char* what) {
    if (s.empty() || s.size() > 18) throw std::invalid_argument(std::string("rational: bad ") + what);
    std::int64_t v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument(std::string("rational: bad ") + what);
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t p = parse_digits(text.substr(0, slash), "numerator");
        std::int64_t q = parse_digits(text.substr(slash + 1), "denominator");
        if (q == 0) throw std::invalid_argument("rational: zero denominator");
        return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_digits(text, "integer"), 1);
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 9) throw std::invalid_argument("rational: too many fractional digits");
    std::int64_t w = whole.empty() ? 0 : parse_digits(whole, "integer part");
    std::int64_t f = frac.empty() ? 0 : parse_digits(frac, "fractional part");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(w * scale + f, scale);
}

std::int64_t ceil_div(__int128 a, __int128 b) {
    return static_cast<std::int64_t>((a + b - 1) / b);
}

std::int64_t floor_div(__int128 a, __int128 b) {
    return static_cast<std::int64_t>(a / b);
}

std::uint64_t isqrt_floor(unsigned __int128 v) {
    if (v == 0) return 0;
    // Newton iteration seeded from the double estimate; a couple of rounds
    // converge for 128-bit inputs, then correct for rounding.
    unsigned __int128 x = static_cast<unsigned __int128>(__builtin_sqrtl(static_cast<long double>(v)));
    if (x == 0) x = 1;
    for (int i = 0; i < 6; ++i) {
        unsigned __int128 nx = (x + v / x) >> 1;
        if (nx == x) break;
        x = nx;
    }
    while (x * x > v) --x;
    while ((x + 1) * (x + 1) <= v) ++x;
    return static_cast<std::uint64_t>(x);
}

std::uint64_t isqrt_ceil(unsigned __int128 v) {
    if (v == 0) return 0;
    std::uint64_t r = isqrt_floor(v - 1);
    return r + 1;
}

}  // namespace ssj
