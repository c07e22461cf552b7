#pragma once

// Sparse exact Laurent polynomials: two-variable with rational coefficients
// (the annihilator ring acting on configurations) and one-variable with
// integer coefficients (cyclotomic divisibility tests).

#include "latcfg/lattice.hpp"
#include "latcfg/numeric.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latcfg {

class LaurentPoly2 {
public:
    LaurentPoly2() = default;

    static LaurentPoly2 zero() { return {}; }
    static LaurentPoly2 constant(const Rat& a) { return monomial({0, 0}, a); }
    static LaurentPoly2 monomial(Vec2 e, const Rat& a = Rat(1)) {
        LaurentPoly2 f;
        if (a != Rat(0)) f.terms_[e] = a;
        return f;
    }

    const std::map<Vec2, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rat coeff(Vec2 e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    std::set<Vec2> support() const {
        std::set<Vec2> s;
        for (auto& [e, a] : terms_) s.insert(e);
        return s;
    }

    void add_term(Vec2 e, const Rat& a) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (a != Rat(0)) terms_[e] = a;
        } else {
            it->second += a;
            if (it->second == Rat(0)) terms_.erase(it);
        }
    }

    friend LaurentPoly2 operator+(const LaurentPoly2& f, const LaurentPoly2& g) {
        LaurentPoly2 h = f;
        for (auto& [e, a] : g.terms_) h.add_term(e, a);
        return h;
    }

    friend LaurentPoly2 operator-(const LaurentPoly2& f, const LaurentPoly2& g) {
        LaurentPoly2 h = f;
        for (auto& [e, a] : g.terms_) h.add_term(e, -a);
        return h;
    }

    LaurentPoly2 operator-() const {
        LaurentPoly2 h;
        for (auto& [e, a] : terms_) h.terms_[e] = -a;
        return h;
    }

    friend LaurentPoly2 operator*(const LaurentPoly2& f, const LaurentPoly2& g) {
        LaurentPoly2 h;
        for (auto& [ef, af] : f.terms_)
            for (auto& [eg, ag] : g.terms_) h.add_term(ef + eg, af * ag);
        return h;
    }

    friend LaurentPoly2 operator*(const Rat& a, const LaurentPoly2& f) {
        LaurentPoly2 h;
        if (a == Rat(0)) return h;
        for (auto& [e, c] : f.terms_) h.terms_[e] = a * c;
        return h;
    }

    // f |-> U^v * f
    LaurentPoly2 shifted(Vec2 v) const {
        LaurentPoly2 h;
        for (auto& [e, a] : terms_) h.terms_[e + v] = a;
        return h;
    }

    friend bool operator==(const LaurentPoly2&, const LaurentPoly2&) = default;

private:
    std::map<Vec2, Rat> terms_; // no zero coefficients stored
};

inline LaurentPoly2 U(Vec2 v) { return LaurentPoly2::monomial(v); }

// Canonical direction of a line polynomial sum_i a_i U^{iv}: every exponent
// is an integer multiple of one vector, i.e. the support lies on a line
// through the origin. A monomial lies on every such line, so it yields no
// unique direction.
inline std::optional<Direction> is_line_polynomial(const LaurentPoly2& f) {
    if (f.is_zero()) throw std::invalid_argument("is_line_polynomial: zero polynomial");
    if (f.term_count() == 1) return std::nullopt;
    std::optional<Direction> d;
    for (auto& [e, a] : f.terms()) {
        if (e.is_zero()) continue;
        if (!d)
            d = direction_of(e);
        else if (e.cross(d->vec()) != 0)
            return std::nullopt;
    }
    return d; // set: distinct exponents leave at most one zero among >= 2 terms
}

// f - U^v f; annihilates every configuration that f annihilates.
inline LaurentPoly2 difference_annihilator(const LaurentPoly2& f, Vec2 v) {
    if (v.is_zero()) throw std::invalid_argument("difference_annihilator: zero shift");
    return f - f.shifted(v);
}

// prod over v in supp(f), v != v0 of (U^{n0(v-v0)} - 1).
inline LaurentPoly2 product_annihilator(const LaurentPoly2& f, Vec2 v0, Int n0) {
    if (n0 < 1) throw std::invalid_argument("product_annihilator: n0 must be positive");
    if (f.coeff(v0) == Rat(0))
        throw std::invalid_argument("product_annihilator: v0 not in support");
    if (f.term_count() < 2)
        throw std::invalid_argument("product_annihilator: support must have >= 2 points");
    LaurentPoly2 g = LaurentPoly2::constant(Rat(1));
    for (auto& [v, a] : f.terms()) {
        if (v == v0) continue;
        g = g * (U(n0 * (v - v0)) - LaurentPoly2::constant(Rat(1)));
    }
    return g;
}

class LaurentPoly1 {
public:
    LaurentPoly1() = default;

    static LaurentPoly1 monomial(Int e, Int a = 1) {
        LaurentPoly1 f;
        if (a != 0) f.terms_[e] = a;
        return f;
    }

    const std::map<Int, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Int e, Int a) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (a != 0) terms_[e] = a;
        } else {
            it->second += a;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Int min_exp() const { return terms_.begin()->first; }
    Int max_exp() const { return terms_.rbegin()->first; }

    Int eval_at_one() const {
        Int s = 0;
        for (auto& [e, a] : terms_) s += a;
        return s;
    }

    friend bool operator==(const LaurentPoly1&, const LaurentPoly1&) = default;

private:
    std::map<Int, Int> terms_;
};

// Phi_{p^m}(z) = Phi_p(z^{p^{m-1}}) = 1 + z^{p^{m-1}} + ... + z^{(p-1)p^{m-1}}.
inline LaurentPoly1 cyclotomic_pm(Int p, Int m) {
    if (!is_prime(p)) throw std::invalid_argument("cyclotomic_pm: p must be prime");
    if (m < 1) throw std::invalid_argument("cyclotomic_pm: m must be positive");
    Int step = 1;
    for (Int i = 1; i < m; ++i) step *= p;
    LaurentPoly1 f;
    for (Int k = 0; k < p; ++k) f.add_term(k * step, 1);
    return f;
}

// Exact divisibility in Z[z^{+-}]: both operands are normalized by their
// minimal exponent (Laurent units are invertible), then f-hat is divided by
// d-hat over Q; divisibility holds iff the remainder vanishes and the
// quotient is integral.
inline bool divides_1var(const LaurentPoly1& d, const LaurentPoly1& f) {
    if (d.is_zero()) throw std::invalid_argument("divides_1var: zero divisor");
    if (f.is_zero()) return true;

    Int dlo = d.min_exp(), flo = f.min_exp();
    Int ddeg = d.max_exp() - dlo, fdeg = f.max_exp() - flo;
    if (fdeg < ddeg) return false;

    std::vector<Rat> rem(static_cast<std::size_t>(fdeg) + 1, Rat(0));
    for (auto& [e, a] : f.terms()) rem[static_cast<std::size_t>(e - flo)] = Rat(a);
    std::vector<Int> div(static_cast<std::size_t>(ddeg) + 1, 0);
    for (auto& [e, a] : d.terms()) div[static_cast<std::size_t>(e - dlo)] = a;

    Rat lead(div[static_cast<std::size_t>(ddeg)]);
    for (Int k = fdeg - ddeg; k >= 0; --k) {
        Rat q = rem[static_cast<std::size_t>(k + ddeg)] / lead;
        if (q == Rat(0)) continue;
        if (q.denominator() != 1) return false;
        for (Int i = 0; i <= ddeg; ++i)
            rem[static_cast<std::size_t>(k + i)] -= q * Rat(div[static_cast<std::size_t>(i)]);
    }
    for (const Rat& r : rem)
        if (r != Rat(0)) return false;
    return true;
}

// Text format: one term per line, `coeff x_exp y_exp`, '#' starts a comment.
inline std::string print_poly2(const LaurentPoly2& f) {
    std::ostringstream os;
    for (auto& [e, a] : f.terms())
        os << rat_str(a) << " " << e.x << " " << e.y << "\n";
    return os.str();
}

inline LaurentPoly2 parse_poly2(std::istream& in) {
    LaurentPoly2 f;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string coeff;
        if (!(ls >> coeff)) continue;
        Int ex, ey;
        if (!(ls >> ex >> ey))
            throw std::invalid_argument("poly parse error at line " + std::to_string(lineno));
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("poly parse error at line " + std::to_string(lineno));
        f.add_term({ex, ey}, parse_rat(coeff));
    }
    return f;
}

inline LaurentPoly2 parse_poly2(const std::string& text) {
    std::istringstream in(text);
    return parse_poly2(in);
}

} // namespace latcfg
