#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "chdecomp/errors.hpp"

namespace chd {

// Exact rational arithmetic on int64 with __int128 intermediates. Angles are stored
// as rational multiples of pi, so the wall/chamber geometry is decided exactly.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw RationalOverflow("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return double(num) / double(den); }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

namespace detail {
inline std::int64_t narrow(__int128 v) {
    if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
        throw RationalOverflow("rational overflow");
    return std::int64_t(v);
}
inline Rat make(__int128 n, __int128 d) {
    if (d == 0) throw RationalOverflow("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    Rat r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
}
} // namespace detail

inline Rat operator+(const Rat& a, const Rat& b) {
    return detail::make(__int128(a.num) * b.den + __int128(b.num) * a.den, __int128(a.den) * b.den);
}
inline Rat operator-(const Rat& a, const Rat& b) {
    return detail::make(__int128(a.num) * b.den - __int128(b.num) * a.den, __int128(a.den) * b.den);
}
inline Rat operator*(const Rat& a, const Rat& b) {
    return detail::make(__int128(a.num) * b.num, __int128(a.den) * b.den);
}
inline Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw RationalOverflow("rational division by zero");
    return detail::make(__int128(a.num) * b.den, __int128(a.den) * b.num);
}
inline Rat operator-(const Rat& a) { Rat r; r.num = -a.num; r.den = a.den; return r; }

inline int cmp(const Rat& a, const Rat& b) {
    __int128 l = __int128(a.num) * b.den, r = __int128(b.num) * a.den;
    return l < r ? -1 : (l > r ? 1 : 0);
}
inline bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
inline bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
inline bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
inline bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
inline bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
inline bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

inline int sign(const Rat& a) { return a.num < 0 ? -1 : (a.num > 0 ? 1 : 0); }

// Point in the (theta1, theta2) plane, coordinates in units of pi.
struct RatPt {
    Rat x, y;
};

inline bool operator==(const RatPt& a, const RatPt& b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(const RatPt& a, const RatPt& b) { return !(a == b); }

inline bool lex_less(const RatPt& a, const RatPt& b) {
    int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return cmp(a.y, b.y) < 0;
}

inline Rat cross(const RatPt& o, const RatPt& a, const RatPt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Reduce x into [0, m) exactly.
inline Rat rat_mod(Rat x, const Rat& m) {
    __int128 n = __int128(x.num) * m.den;
    __int128 d = __int128(x.den) * m.num; // assumes m > 0
    __int128 q = n / d;
    if (n % d != 0 && ((n < 0) != (d < 0))) q -= 1;
    return x - Rat(detail::narrow(q)) * m;
}

} // namespace chd
