#pragma once

// Integer lattice primitives: plane vectors, canonical primitive directions,
// extended gcd, and finite-index sublattices of Z^2 in Hermite normal form.

#include "latcfg/numeric.hpp"

#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace latcfg {

struct Vec2 {
    Int x = 0;
    Int y = 0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(Int k, Vec2 v) { return {k * v.x, k * v.y}; }
    friend constexpr auto operator<=>(const Vec2&, const Vec2&) = default;

    constexpr bool is_zero() const { return x == 0 && y == 0; }
    constexpr Int cross(Vec2 o) const { return x * o.y - y * o.x; }
    constexpr Int dot(Vec2 o) const { return x * o.x + y * o.y; }
    Int norm_inf() const { return std::max(x < 0 ? -x : x, y < 0 ? -y : y); }

    friend std::ostream& operator<<(std::ostream& os, Vec2 v) {
        return os << "(" << v.x << "," << v.y << ")";
    }
};

struct BezoutResult {
    Int g;  // gcd(a, b) > 0
    Int x0; // a*x0 + b*y0 == g
    Int y0;
};

inline BezoutResult bezout(Int a, Int b) {
    if (a == 0 && b == 0) throw std::invalid_argument("bezout: (0,0) has no gcd witness");
    // iterative extended Euclid on |a|, |b|, signs fixed afterwards
    Int old_r = a < 0 ? -a : a, r = b < 0 ? -b : b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (a < 0) old_s = -old_s;
    if (b < 0) old_t = -old_t;
    return {old_r, old_s, old_t};
}

// A line through the origin, stored as its canonical primitive vector:
// gcd(|dx|,|dy|) = 1 and dy > 0, or dy = 0 and dx > 0. Build via direction_of.
struct Direction {
    Int dx = 1;
    Int dy = 0;

    friend constexpr auto operator<=>(const Direction&, const Direction&) = default;

    constexpr Vec2 vec() const { return {dx, dy}; }
    friend std::ostream& operator<<(std::ostream& os, Direction d) {
        return os << "(" << d.dx << "," << d.dy << ")";
    }
};

inline Direction direction_of(Vec2 v) {
    if (v.is_zero()) throw std::invalid_argument("direction_of: zero vector");
    Int g = std::gcd(v.x, v.y);
    Int dx = v.x / g, dy = v.y / g;
    if (dy < 0 || (dy == 0 && dx < 0)) { dx = -dx; dy = -dy; }
    return {dx, dy};
}

// Finite-index sublattice of Z^2 with basis (a,0), (c,b) in Hermite normal
// form: a >= 1, b >= 1, 0 <= c < a. Unique per sublattice; index = a*b.
class Lattice2 {
public:
    static Lattice2 hnf(Int a, Int b, Int c) {
        if (a < 1 || b < 1 || c < 0 || c >= a)
            throw std::invalid_argument("Lattice2: not a valid HNF triple");
        return Lattice2(a, b, c);
    }

    static Lattice2 identity() { return Lattice2(1, 1, 0); }

    // HNF of the full-rank sublattice generated by u and v.
    static Lattice2 from_vectors(Vec2 u, Vec2 v) {
        if (u.cross(v) == 0)
            throw std::invalid_argument("Lattice2::from_vectors: vectors not independent");
        return from_generators({u, v});
    }

    // HNF of the lattice generated by an arbitrary spanning set.
    static Lattice2 from_generators(const std::vector<Vec2>& gens) {
        // Reduce to two rows by repeated gcd elimination on y, then x.
        Int b = 0, c = 0; // row (c, b) with b = gcd of all y's
        std::vector<Int> xs;
        for (Vec2 g : gens) {
            if (g.y == 0) { xs.push_back(g.x); continue; }
            if (b == 0) { b = g.y; c = g.x; continue; }
            auto e = bezout(b, g.y);
            Int nb = e.g;
            Int nc = e.x0 * c + e.y0 * g.x;
            // the eliminated combinations land on the x-axis
            xs.push_back((b / e.g) * g.x - (g.y / e.g) * c);
            b = nb; c = nc;
        }
        Int a = 0;
        for (Int x : xs) a = std::gcd(a, x);
        if (a == 0 || b == 0)
            throw std::invalid_argument("Lattice2::from_generators: rank < 2");
        if (b < 0) { b = -b; c = -c; }
        c = floor_mod(c, a);
        return Lattice2(a, b, c);
    }

    Int a() const { return a_; }
    Int b() const { return b_; }
    Int c() const { return c_; }
    Int index() const { return a_ * b_; }

    bool contains(Vec2 v) const {
        if (v.y % b_ != 0) return false;
        return (v.x - (v.y / b_) * c_) % a_ == 0;
    }

    // Representative of v's coset in the fundamental domain [0,a) x [0,b).
    Vec2 reduce(Vec2 v) const {
        Int n = floor_div(v.y, b_);
        Int y = v.y - n * b_;
        Int x = floor_mod(v.x - n * c_, a_);
        return {x, y};
    }

    // Exactly index() representatives, pairwise incongruent.
    std::vector<Vec2> cosets() const {
        std::vector<Vec2> reps;
        reps.reserve(static_cast<std::size_t>(index()));
        for (Int j = 0; j < b_; ++j)
            for (Int i = 0; i < a_; ++i) reps.push_back({i, j});
        return reps;
    }

    friend Lattice2 intersect(const Lattice2& L, const Lattice2& M) {
        // N*Z^2 sits inside both, so generators of the intersection can be
        // collected from one N x N box.
        Int N = std::lcm(L.index(), M.index());
        std::vector<Vec2> gens{{N, 0}, {0, N}};
        for (Int y = 0; y < N; ++y)
            for (Int x = 0; x < N; ++x) {
                Vec2 v{x, y};
                if (!v.is_zero() && L.contains(v) && M.contains(v)) gens.push_back(v);
            }
        return from_generators(gens);
    }

    friend bool operator==(const Lattice2& l, const Lattice2& r) {
        return l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_;
    }

private:
    Lattice2(Int a, Int b, Int c) : a_(a), b_(b), c_(c) {}
    Int a_, b_, c_;
};

} // namespace latcfg
