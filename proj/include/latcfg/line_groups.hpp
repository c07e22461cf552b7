#pragma once

// Shared machinery for the prime-square analysis: partition a cluster into
// maximal subsets on common lines parallel to a direction h, and scan the
// cyclotomic divisibility levels of the per-line polynomials sum z^{<g,h>}.
// Both the tiling pipeline and the character pipeline call these, so the two
// can never disagree on m_max or on a level verdict.

#include "latcfg/cluster.hpp"
#include "latcfg/laurent.hpp"

#include <map>
#include <utility>
#include <vector>

namespace latcfg {

struct LineGroups {
    Direction direction;
    // line id (cross product with h, constant along lines parallel to h)
    // -> inner products <g,h> of the points on that line
    std::map<Int, std::vector<Int>> exponents;
};

inline LineGroups group_by_lines(const Cluster& F, Direction h) {
    LineGroups lg{h, {}};
    Vec2 hv = h.vec();
    for (Vec2 g : F.points()) lg.exponents[g.cross(hv)].push_back(g.dot(hv));
    return lg;
}

// Largest m for which Phi_p(z^{p^{m-1}}) (degree (p-1)p^{m-1}) can still
// divide some line polynomial: its degree must not exceed the widest
// exponent spread over the lines.
inline Int cyclotomic_m_max(const LineGroups& lg, Int p) {
    Int spread = 0;
    for (auto& [id, exps] : lg.exponents) {
        Int lo = exps.front(), hi = exps.front();
        for (Int e : exps) { lo = std::min(lo, e); hi = std::max(hi, e); }
        spread = std::max(spread, hi - lo);
    }
    Int m = 0, deg = p - 1;
    while (deg <= spread) { ++m; deg *= p; }
    return m;
}

// For m = 1..m_max: does Phi_p(z^{p^{m-1}}) divide sum_{g in F_j} z^{<g,h>}
// for every line F_j?
inline std::vector<std::pair<Int, bool>> cyclotomic_level_scan(const LineGroups& lg, Int p) {
    std::vector<std::pair<Int, bool>> levels;
    Int m_max = cyclotomic_m_max(lg, p);
    for (Int m = 1; m <= m_max; ++m) {
        LaurentPoly1 phi = cyclotomic_pm(p, m);
        bool passes = true;
        for (auto& [id, exps] : lg.exponents) {
            LaurentPoly1 line_poly;
            for (Int e : exps) line_poly.add_term(e, 1);
            if (!divides_1var(phi, line_poly)) { passes = false; break; }
        }
        levels.emplace_back(m, passes);
    }
    return levels;
}

} // namespace latcfg
