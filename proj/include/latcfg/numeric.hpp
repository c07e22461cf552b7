#pragma once

// Exact integer/rational helpers shared by every module. No floating point
// is used anywhere in the library except as a seed for integer square roots.

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latcfg {

using Int = long long;
using Rat = boost::rational<Int>;

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor_mod(Int a, Int b) { return a - floor_div(a, b) * b; }

// Largest r with r*r <= n. Binary search on 128-bit squares, always exact.
inline Int isqrt_floor(unsigned __int128 n) {
    unsigned __int128 lo = 0, hi = 1;
    while (hi * hi <= n) hi <<= 1;
    while (lo + 1 < hi) {
        unsigned __int128 mid = lo + (hi - lo) / 2;
        if (mid * mid <= n)
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<Int>(lo);
}

// floor(B * sqrt(d)) for non-square d; exact for negative B as well
// (B*sqrt(d) is irrational whenever B != 0, so the ceiling is floor+1).
inline Int floor_mul_sqrt(Int B, Int d) {
    if (B == 0) return 0;
    unsigned __int128 mag = static_cast<unsigned __int128>(B < 0 ? -B : B);
    Int s = isqrt_floor(mag * mag * static_cast<unsigned __int128>(d));
    return B > 0 ? s : -s - 1;
}

inline bool is_perfect_square(Int n) {
    if (n < 0) return false;
    Int s = isqrt_floor(static_cast<unsigned __int128>(n));
    return s * s == n;
}

inline bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

inline std::string rat_str(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "n" or "n/d" with optional leading sign.
inline Rat parse_rat(std::string_view s) {
    auto bad = [&] { throw std::invalid_argument("bad rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string_view::npos) {
            std::size_t used = 0;
            Int n = std::stoll(std::string(s), &used);
            if (used != s.size()) bad();
            return Rat(n);
        }
        std::string ns(s.substr(0, slash)), ds(s.substr(slash + 1));
        std::size_t un = 0, ud = 0;
        Int n = std::stoll(ns, &un);
        Int d = std::stoll(ds, &ud);
        if (un != ns.size() || ud != ds.size() || d == 0) bad();
        return Rat(n, d);
    } catch (const std::invalid_argument&) {
        bad();
    } catch (const std::out_of_range&) {
        bad();
    }
    return Rat(0); // unreachable
}

} // namespace latcfg
