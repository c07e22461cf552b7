#pragma once

// Rational points on the 2-torus and the exact parametrization of character
// kernels ker(chi_{nh}); feeds the prime-square pipeline through the shared
// cyclotomic level scan.

#include "latcfg/cluster.hpp"
#include "latcfg/line_groups.hpp"

#include <utility>
#include <vector>

namespace latcfg {

inline Rat rat_floor(const Rat& r) { return Rat(floor_div(r.numerator(), r.denominator())); }
inline Rat rat_mod1(const Rat& r) { return r - rat_floor(r); }

// Point of (R/Z)^2 with rational coordinates, reduced to [0,1)^2.
struct RationalPoint2 {
    Rat x{0};
    Rat y{0};

    RationalPoint2() = default;
    RationalPoint2(Rat px, Rat py) : x(rat_mod1(px)), y(rat_mod1(py)) {}

    friend bool operator==(const RationalPoint2&, const RationalPoint2&) = default;
};

// chi_g(pt) = 1, i.e. g.x * x + g.y * y lies in Z.
inline bool in_kernel(const RationalPoint2& pt, Vec2 g) {
    Rat s = Rat(g.x) * pt.x + Rat(g.y) * pt.y;
    return s.denominator() == 1;
}

// ker(chi_{nh}) = { (ka/(n(a^2+b^2)) - bt, kb/(n(a^2+b^2)) + at) : t, k }:
// the offsets k/(n(a^2+b^2)) along h plus the full line along the
// perpendicular axis (-b, a).
struct KernelParam {
    Direction h;
    Int n = 1;
    std::vector<Rat> offsets; // n(a^2+b^2) of them
    Vec2 axis;                // (-b, a), perpendicular to h

    RationalPoint2 point(std::size_t k, const Rat& t) const {
        const Rat& lam = offsets.at(k);
        return RationalPoint2(lam * Rat(h.dx) + t * Rat(axis.x),
                              lam * Rat(h.dy) + t * Rat(axis.y));
    }
};

inline KernelParam kernel_parametrization(Direction h, Int n) {
    if (n < 1) throw std::invalid_argument("kernel_parametrization: n must be positive");
    KernelParam kp;
    kp.h = h;
    kp.n = n;
    kp.axis = {-h.dy, h.dx};
    Int M = n * (h.dx * h.dx + h.dy * h.dy);
    kp.offsets.reserve(static_cast<std::size_t>(M));
    for (Int k = 0; k < M; ++k) kp.offsets.emplace_back(k, M);
    return kp;
}

// Exact coordinates (lambda, t) with pt = lambda*(a,b) + t*(-b,a), solved on
// the [0,1)^2 representative: lambda = (ax+by)/(a^2+b^2).
inline std::pair<Rat, Rat> lift_to_primitive_frame(const RationalPoint2& pt, Direction h) {
    Rat nrm(h.dx * h.dx + h.dy * h.dy);
    Rat lambda = (Rat(h.dx) * pt.x + Rat(h.dy) * pt.y) / nrm;
    Rat t = (Rat(-h.dy) * pt.x + Rat(h.dx) * pt.y) / nrm;
    return {lambda, t};
}

// For each m in [1, m_max]: does Phi_p(z^{p^{m-1}}) divide the line
// polynomial of every line of F parallel to h? This is the c-independent
// criterion: substituting z -> z^{c^{-1} mod p^m} permutes the residues, so
// the coprime scaling in the paper's equations drops out.
inline std::vector<std::pair<Int, bool>> grouped_vanishing(const Cluster& F, Direction h,
                                                           Int p) {
    if (!is_prime(p)) throw std::invalid_argument("grouped_vanishing: p must be prime");
    return cyclotomic_level_scan(group_by_lines(F, h), p);
}

} // namespace latcfg
