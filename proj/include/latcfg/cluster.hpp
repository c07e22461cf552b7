#pragma once

// Finite point sets in Z^2 (tile shapes / polynomial supports), their
// direction sets, and the order upper bounds they induce.

#include "latcfg/lattice.hpp"
#include "latcfg/laurent.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcfg {

class Cluster {
public:
    static Cluster from_points(const std::vector<Vec2>& pts) {
        if (pts.empty()) throw std::invalid_argument("Cluster: empty point set");
        Cluster c;
        c.points_.insert(pts.begin(), pts.end());
        return c;
    }

    static Cluster from_set(std::set<Vec2> pts) {
        if (pts.empty()) throw std::invalid_argument("Cluster: empty point set");
        Cluster c;
        c.points_ = std::move(pts);
        return c;
    }

    const std::set<Vec2>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool contains(Vec2 v) const { return points_.count(v) != 0; }

    Vec2 min_corner() const {
        Vec2 m = *points_.begin();
        for (Vec2 p : points_) { m.x = std::min(m.x, p.x); m.y = std::min(m.y, p.y); }
        return m;
    }

    Vec2 max_corner() const {
        Vec2 m = *points_.begin();
        for (Vec2 p : points_) { m.x = std::max(m.x, p.x); m.y = std::max(m.y, p.y); }
        return m;
    }

    Int diameter_inf() const { return (max_corner() - min_corner()).norm_inf(); }

    Cluster translated(Vec2 t) const {
        std::set<Vec2> pts;
        for (Vec2 p : points_) pts.insert(p + t);
        return from_set(std::move(pts));
    }

    // Translate with the bounding-box corner at the origin; canonical
    // representative of the translation class.
    Cluster canonical_translate() const { return translated(-min_corner()); }

    // sum over a in F of U^a  (the indicator polynomial of Eq-1 style sums)
    LaurentPoly2 indicator_poly() const {
        LaurentPoly2 f;
        for (Vec2 p : points_) f.add_term(p, Rat(1));
        return f;
    }

    // sum over a in F of U^{-a}  (the tiling annihilator seed f(U))
    LaurentPoly2 negated_indicator_poly() const {
        LaurentPoly2 f;
        for (Vec2 p : points_) f.add_term(-p, Rat(1));
        return f;
    }

    friend bool operator==(const Cluster&, const Cluster&) = default;

private:
    Cluster() = default;
    std::set<Vec2> points_;
};

using DirectionSet = std::set<Direction>;

// dir_S(v): directions of the lines joining v to the other points of S.
inline DirectionSet dir_at(const Cluster& S, Vec2 v) {
    if (!S.contains(v)) throw std::invalid_argument("dir_at: v not in cluster");
    DirectionSet ds;
    for (Vec2 p : S.points())
        if (p != v) ds.insert(direction_of(p - v));
    return ds;
}

// dir(S) = intersection of dir_S(v) over v in S. Equivalently: the lines l
// such that every line parallel to l meets S in zero or at least two points.
inline DirectionSet dir(const Cluster& S) {
    auto it = S.points().begin();
    DirectionSet acc = dir_at(S, *it);
    for (++it; it != S.points().end() && !acc.empty(); ++it) {
        DirectionSet next = dir_at(S, *it);
        DirectionSet both;
        std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(),
                              std::inserter(both, both.begin()));
        acc = std::move(both);
    }
    return acc;
}

inline std::size_t order_bound_tiling(const Cluster& F) { return dir(F).size(); }

// |intersection over the supplied family of dir(supp(f))|. Relative to the
// finite family: a superset of the full-ideal intersection, hence still an
// upper bound for the order.
inline std::size_t annihilator_direction_bound(const std::vector<LaurentPoly2>& polys) {
    if (polys.empty())
        throw std::invalid_argument("annihilator_direction_bound: empty family");
    bool first = true;
    DirectionSet acc;
    for (const LaurentPoly2& f : polys) {
        if (f.is_zero())
            throw std::invalid_argument("annihilator_direction_bound: zero polynomial");
        DirectionSet ds = dir(Cluster::from_set(f.support()));
        if (first) {
            acc = std::move(ds);
            first = false;
        } else {
            DirectionSet both;
            std::set_intersection(acc.begin(), acc.end(), ds.begin(), ds.end(),
                                  std::inserter(both, both.begin()));
            acc = std::move(both);
        }
        if (acc.empty()) break;
    }
    return acc.size();
}

// A shift v such that f - U^v f (f the negated indicator of F) has a support
// whose direction set avoids d. Requires d not in dir(F); postconditions are
// re-verified on the returned value.
inline Vec2 separated_shift(const Cluster& F, Direction d) {
    {
        DirectionSet df = dir(F);
        if (df.count(d))
            throw std::invalid_argument("separated_shift: d lies in dir(F)");
    }
    LaurentPoly2 f = F.negated_indicator_poly();
    auto good = [&](Vec2 v) {
        if (direction_of(v) == d) return false;
        for (Vec2 p : F.points())
            if (F.contains(p + v)) return false;
        LaurentPoly2 g = difference_annihilator(f, v);
        return dir(Cluster::from_set(g.support())).count(d) == 0;
    };
    Int limit = 4 * F.diameter_inf() + 8;
    for (Int R = 1; R <= limit; ++R) {
        for (Int x = -R; x <= R; ++x)
            for (Int y = -R; y <= R; ++y) {
                Vec2 v{x, y};
                if (v.norm_inf() != R) continue;
                if (good(v)) return v;
            }
    }
    throw std::logic_error("separated_shift: no shift found within search bound");
}

// Cluster file: one `x y` pair per line, '#' comments allowed.
inline Cluster parse_cluster(std::istream& in) {
    std::vector<Vec2> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string xs;
        if (!(ls >> xs)) continue;
        Int x, y;
        std::size_t used = 0;
        try {
            x = std::stoll(xs, &used);
        } catch (...) {
            used = 0;
        }
        std::string extra;
        if (used != xs.size() || !(ls >> y) || (ls >> extra))
            throw std::invalid_argument("cluster parse error at line " + std::to_string(lineno));
        pts.push_back({x, y});
    }
    if (pts.empty()) throw std::invalid_argument("cluster file has no points");
    return Cluster::from_points(pts);
}

inline Cluster parse_cluster(const std::string& text) {
    std::istringstream in(text);
    return parse_cluster(in);
}

inline std::string print_cluster(const Cluster& F) {
    std::ostringstream os;
    for (Vec2 p : F.points()) os << p.x << " " << p.y << "\n";
    return os.str();
}

} // namespace latcfg
