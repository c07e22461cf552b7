#pragma once

// Symbolic configurations c: Z^2 -> Q that are exactly evaluable at every
// point: finite-support data, biperiodic tables, 1-periodic components driven
// by lane words, and the Sturmian / random-product point rules. On top of
// them: the polynomial action, annihilation certificates, periodicity
// probing, and the order-2 coset splitting algorithm.

#include "latcfg/lattice.hpp"
#include "latcfg/laurent.hpp"
#include "latcfg/numeric.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace latcfg {

// alpha = (p + q*sqrt(d)) / r with d a non-square (so alpha is irrational).
// floor(n*alpha) is computed exactly through the integer square root; the
// fractional part of n*q*sqrt(d) is never zero, which pins the floor of the
// sum without any rounding ambiguity.
class QuadIrrational {
public:
    QuadIrrational(Int p, Int q, Int d, Int r) : p_(p), q_(q), d_(d), r_(r) {
        if (r < 1) throw std::invalid_argument("QuadIrrational: r must be positive");
        if (d < 2 || is_perfect_square(d))
            throw std::invalid_argument("QuadIrrational: d must be a non-square >= 2");
        if (q == 0) throw std::invalid_argument("QuadIrrational: q = 0 gives a rational");
    }

    Int p() const { return p_; }
    Int q() const { return q_; }
    Int d() const { return d_; }
    Int r() const { return r_; }

    // floor(n * alpha), exact for every integer n.
    Int floor_times(Int n) const {
        Int whole = n * p_ + floor_mul_sqrt(n * q_, d_);
        return floor_div(whole, r_);
    }

    friend bool operator==(const QuadIrrational&, const QuadIrrational&) = default;

private:
    Int p_, q_, d_, r_;
};

struct PeriodicWord {
    std::vector<Rat> values; // nonempty; period = values.size()
};

struct ExplicitTable {
    Rat default_value;
    std::map<Int, Rat> overrides;
};

// s(n) = floor((n+1)*alpha) - floor(n*alpha)
struct SturmianWord {
    QuadIrrational alpha;
};

class LaneGenerator {
public:
    LaneGenerator(PeriodicWord w) : v_(std::move(w)) {
        if (std::get<PeriodicWord>(v_).values.empty())
            throw std::invalid_argument("PeriodicWord: empty word");
    }
    LaneGenerator(ExplicitTable t) : v_(std::move(t)) {}
    LaneGenerator(SturmianWord s) : v_(std::move(s)) {}

    Rat eval(Int n) const {
        if (auto* w = std::get_if<PeriodicWord>(&v_)) {
            Int L = static_cast<Int>(w->values.size());
            return w->values[static_cast<std::size_t>(floor_mod(n, L))];
        }
        if (auto* t = std::get_if<ExplicitTable>(&v_)) {
            auto it = t->overrides.find(n);
            return it == t->overrides.end() ? t->default_value : it->second;
        }
        const auto& s = std::get<SturmianWord>(v_);
        return Rat(s.alpha.floor_times(n + 1) - s.alpha.floor_times(n));
    }

    bool is_periodic_word() const { return std::holds_alternative<PeriodicWord>(v_); }
    Int word_period() const { return static_cast<Int>(std::get<PeriodicWord>(v_).values.size()); }

    template <class T> const T* get_if() const { return std::get_if<T>(&v_); }

private:
    std::variant<PeriodicWord, ExplicitTable, SturmianWord> v_;
};

struct FiniteSupportComp {
    std::map<Vec2, Rat> values; // no stored zeros
};

struct BiperiodicComp {
    Lattice2 lattice;
    std::map<Vec2, Rat> table; // keyed by coset representative; absent = 0
};

// c(p) = lane(index(p)) where p = a*w + b*u for the primitive vector w of the
// period and the transversal u (a complement: det(w,u) = +-1). The lane index
// is k*b + (a mod k) with period = k*w, so the component is invariant under
// exactly the multiples of the period vector, never accidentally under w.
class OnePeriodicComp {
public:
    OnePeriodicComp(Vec2 period, LaneGenerator lane)
        : OnePeriodicComp(period, default_transversal(direction_of(period).vec()),
                          std::move(lane)) {}

    OnePeriodicComp(Vec2 period, Vec2 transversal, LaneGenerator lane)
        : period_(period), u_(transversal), lane_(std::move(lane)) {
        if (period.is_zero()) throw std::invalid_argument("OnePeriodic: zero period");
        w_ = direction_of(period).vec();
        if (period.x != 0)
            k_ = period.x / w_.x;
        else
            k_ = period.y / w_.y;
        if (k_ < 0) { w_ = -w_; k_ = -k_; } // keep period = k*w with k > 0
        det_ = w_.cross(u_);
        if (det_ != 1 && det_ != -1)
            throw std::invalid_argument("OnePeriodic: transversal does not complement period");
    }

    static Vec2 default_transversal(Vec2 w) {
        if (w.y == 0) return {0, 1};
        if (w.x == 0) return {1, 0};
        auto e = bezout(w.x, w.y);
        return {-e.y0, e.x0}; // det(w, u) = w.x*x0 + w.y*y0 = 1
    }

    Vec2 period() const { return period_; }
    Vec2 transversal() const { return u_; }
    const LaneGenerator& lane() const { return lane_; }
    Int multiplicity() const { return k_; }

    Rat eval(Vec2 p) const {
        Int a = (p.x * u_.y - p.y * u_.x) / det_;
        Int b = (w_.x * p.y - w_.y * p.x) / det_;
        return lane_.eval(k_ * b + floor_mod(a, k_));
    }

    // Only when the lane is a periodic word: a lattice under which the
    // component is invariant (period vector and word-length many transversal
    // steps).
    Lattice2 invariance_lattice() const {
        return Lattice2::from_vectors(period_, lane_.word_period() * u_);
    }

private:
    Vec2 period_;
    Vec2 u_;
    LaneGenerator lane_;
    Vec2 w_;
    Int k_ = 1;
    Int det_ = 1;
};

// c(i,j) = floor((i+j)a) - floor(ia) - floor(ja), always 0 or 1.
struct SturmianDiffComp {
    QuadIrrational alpha;
};

// c(i,j) = phi(i) + psi(j) with phi, psi pseudo-random {0,1}-words derived
// from the seed by splitmix64; values lie in {0,1,2} and are reproducible
// bit-exactly across runs and platforms.
struct RandomProductComp {
    std::uint64_t seed;
};

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Word bit n of the given stream (1 = phi, 2 = psi).
inline int random_word_bit(std::uint64_t seed, std::uint64_t stream, Int n) {
    std::uint64_t key = splitmix64(seed ^ (stream * 0xD2B74407B1CE6E93ull));
    return static_cast<int>(splitmix64(key ^ static_cast<std::uint64_t>(n)) & 1u);
}

using Component =
    std::variant<FiniteSupportComp, BiperiodicComp, OnePeriodicComp, SturmianDiffComp,
                 RandomProductComp>;

inline Rat eval_component(const Component& comp, Vec2 p) {
    if (auto* fs = std::get_if<FiniteSupportComp>(&comp)) {
        auto it = fs->values.find(p);
        return it == fs->values.end() ? Rat(0) : it->second;
    }
    if (auto* bp = std::get_if<BiperiodicComp>(&comp)) {
        auto it = bp->table.find(bp->lattice.reduce(p));
        return it == bp->table.end() ? Rat(0) : it->second;
    }
    if (auto* op = std::get_if<OnePeriodicComp>(&comp)) return op->eval(p);
    if (auto* st = std::get_if<SturmianDiffComp>(&comp)) {
        const QuadIrrational& a = st->alpha;
        return Rat(a.floor_times(p.x + p.y) - a.floor_times(p.x) - a.floor_times(p.y));
    }
    const auto& rp = std::get<RandomProductComp>(comp);
    return Rat(random_word_bit(rp.seed, 1, p.x) + random_word_bit(rp.seed, 2, p.y));
}

class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Component> comps) : comps_(std::move(comps)) {}

    static Configuration finite_support(std::map<Vec2, Rat> values) {
        std::map<Vec2, Rat> pruned;
        for (auto& [p, v] : values)
            if (v != Rat(0)) pruned.emplace(p, v);
        return Configuration({FiniteSupportComp{std::move(pruned)}});
    }

    static Configuration biperiodic(Lattice2 lat, std::map<Vec2, Rat> table) {
        std::map<Vec2, Rat> reduced;
        for (auto& [p, v] : table) reduced[lat.reduce(p)] = v;
        return Configuration({BiperiodicComp{lat, std::move(reduced)}});
    }

    const std::vector<Component>& components() const { return comps_; }

    Rat eval(Vec2 p) const {
        Rat s(0);
        for (const Component& c : comps_) s += eval_component(c, p);
        return s;
    }

    // All components are exact periodic data (finite support, biperiodic
    // table, or periodic-word lane), so global statements can be certified.
    bool fully_periodic() const {
        for (const Component& c : comps_) {
            if (std::holds_alternative<SturmianDiffComp>(c)) return false;
            if (std::holds_alternative<RandomProductComp>(c)) return false;
            if (auto* op = std::get_if<OnePeriodicComp>(&c))
                if (!op->lane().is_periodic_word()) return false;
        }
        return true;
    }

private:
    std::vector<Component> comps_;
};

inline Configuration sturmian_config(const QuadIrrational& alpha) {
    return Configuration({SturmianDiffComp{alpha}});
}

inline Configuration random_product_config(std::uint64_t seed) {
    return Configuration({RandomProductComp{seed}});
}

struct WindowBounds {
    Int x0, y0, x1, y1; // inclusive

    WindowBounds(Int x0_, Int y0_, Int x1_, Int y1_) : x0(x0_), y0(y0_), x1(x1_), y1(y1_) {
        if (x0 > x1 || y0 > y1) throw std::invalid_argument("WindowBounds: empty window");
    }
    Int width() const { return x1 - x0 + 1; }
    Int height() const { return y1 - y0 + 1; }
    bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }

    friend bool operator==(const WindowBounds&, const WindowBounds&) = default;
};

class Window {
public:
    Window(WindowBounds b) : bounds_(b), vals_(static_cast<std::size_t>(b.width() * b.height())) {}

    const WindowBounds& bounds() const { return bounds_; }
    Vec2 origin() const { return {bounds_.x0, bounds_.y0}; }
    Int width() const { return bounds_.width(); }
    Int height() const { return bounds_.height(); }

    Rat& at(Vec2 p) { return vals_[idx(p)]; }
    const Rat& at(Vec2 p) const { return vals_[idx(p)]; }
    const std::vector<Rat>& values() const { return vals_; }

    friend bool operator==(const Window&, const Window&) = default;

private:
    std::size_t idx(Vec2 p) const {
        if (!bounds_.contains(p)) throw std::out_of_range("Window::at: point outside bounds");
        return static_cast<std::size_t>((p.y - bounds_.y0) * bounds_.width() + (p.x - bounds_.x0));
    }
    WindowBounds bounds_;
    std::vector<Rat> vals_;
};

// (f*c)(p) = sum_v a_v c(p - v) for every p in the bounds; c is evaluated
// globally, so no boundary truncation occurs.
inline Window apply_poly(const LaurentPoly2& f, const Configuration& c, WindowBounds b) {
    Window w(b);
    for (Int y = b.y0; y <= b.y1; ++y)
        for (Int x = b.x0; x <= b.x1; ++x) {
            Vec2 p{x, y};
            Rat s(0);
            for (auto& [v, a] : f.terms()) s += a * c.eval(p - v);
            w.at(p) = s;
        }
    return w;
}

enum class CertKind { ExactPeriodic, WindowChecked, Fails };

struct AnnihilationCertificate {
    CertKind kind;
    WindowBounds window;              // the probed window (echoed in all kinds)
    Vec2 witness{};                   // Fails: point where (f*c)(p) != 0
    Rat value{};                      // Fails: that value
    std::optional<Lattice2> lattice;  // ExactPeriodic: common invariance lattice

    bool failed() const { return kind == CertKind::Fails; }
};

inline const char* cert_kind_name(CertKind k) {
    switch (k) {
        case CertKind::ExactPeriodic: return "ExactPeriodic";
        case CertKind::WindowChecked: return "WindowChecked";
        default: return "Fails";
    }
}

// The polynomial action g*c expressed again as a Configuration; defined for
// finite-support and biperiodic components (the cases where the result stays
// in the same class).
inline Configuration poly_action_config(const LaurentPoly2& g, const Configuration& c) {
    std::vector<Component> out;
    for (const Component& comp : c.components()) {
        if (auto* fs = std::get_if<FiniteSupportComp>(&comp)) {
            std::map<Vec2, Rat> conv;
            for (auto& [v, a] : g.terms())
                for (auto& [q, m] : fs->values) {
                    Vec2 p = q + v;
                    auto it = conv.find(p);
                    if (it == conv.end())
                        conv[p] = a * m;
                    else {
                        it->second += a * m;
                        if (it->second == Rat(0)) conv.erase(it);
                    }
                }
            out.push_back(FiniteSupportComp{std::move(conv)});
        } else if (auto* bp = std::get_if<BiperiodicComp>(&comp)) {
            std::map<Vec2, Rat> table;
            for (Vec2 rep : bp->lattice.cosets()) {
                Rat s(0);
                for (auto& [v, a] : g.terms()) s += a * eval_component(comp, rep - v);
                table[rep] = s;
            }
            out.push_back(BiperiodicComp{bp->lattice, std::move(table)});
        } else {
            throw std::invalid_argument(
                "poly_action_config: only finite-support and biperiodic components");
        }
    }
    return Configuration(std::move(out));
}

// Certify f*c = 0. Fully periodic data gets an exact global proof: the
// finite-support part of f*c is checked on its whole (finite) support region
// and the lattice-invariant part on one fundamental domain of the common
// invariance lattice -- a periodic function with finite support is zero, so
// the two checks cannot mask each other. Anything containing a Sturmian or
// random component is only checkable on the window and is labeled as such.
inline AnnihilationCertificate certify_annihilation(const LaurentPoly2& f,
                                                    const Configuration& c, WindowBounds w) {
    if (c.fully_periodic()) {
        // finite part of f*c by exact convolution
        std::map<Vec2, Rat> conv;
        std::vector<const Component*> periodic;
        for (const Component& comp : c.components()) {
            if (auto* fs = std::get_if<FiniteSupportComp>(&comp)) {
                for (auto& [v, a] : f.terms())
                    for (auto& [q, m] : fs->values) {
                        Vec2 p = q + v;
                        auto it = conv.find(p);
                        if (it == conv.end())
                            conv[p] = a * m;
                        else {
                            it->second += a * m;
                            if (it->second == Rat(0)) conv.erase(it);
                        }
                    }
            } else {
                periodic.push_back(&comp);
            }
        }

        std::optional<Lattice2> lattice;
        for (const Component* comp : periodic) {
            Lattice2 li = std::holds_alternative<BiperiodicComp>(*comp)
                              ? std::get<BiperiodicComp>(*comp).lattice
                              : std::get<OnePeriodicComp>(*comp).invariance_lattice();
            lattice = lattice ? intersect(*lattice, li) : li;
        }

        Vec2 g_witness{};
        Rat g_value(0);
        bool g_bad = false;
        if (lattice) {
            for (Vec2 rep : lattice->cosets()) {
                Rat s(0);
                for (auto& [v, a] : f.terms())
                    for (const Component* comp : periodic) s += a * eval_component(*comp, rep - v);
                if (s != Rat(0)) {
                    g_witness = rep;
                    g_value = s;
                    g_bad = true;
                    break;
                }
            }
        }

        if (g_bad) {
            // Move the witness along the lattice until the finite part is out
            // of range; there the full action equals the periodic part.
            Vec2 step{lattice->a(), 0};
            Vec2 p = g_witness;
            if (!conv.empty()) {
                Int max_x = conv.rbegin()->first.x;
                while (p.x <= max_x) p = p + step;
            }
            return {CertKind::Fails, w, p, g_value, std::nullopt};
        }
        if (!conv.empty()) {
            // Periodic part of f*c is identically zero, so any leftover
            // finite-part value is a genuine violation.
            auto& [p, val] = *conv.begin();
            return {CertKind::Fails, w, p, val, std::nullopt};
        }
        return {CertKind::ExactPeriodic, w, {}, Rat(0), lattice};
    }

    for (Int y = w.y0; y <= w.y1; ++y)
        for (Int x = w.x0; x <= w.x1; ++x) {
            Vec2 p{x, y};
            Rat s(0);
            for (auto& [v, a] : f.terms()) s += a * c.eval(p - v);
            if (s != Rat(0)) return {CertKind::Fails, w, p, s, std::nullopt};
        }
    return {CertKind::WindowChecked, w, {}, Rat(0), std::nullopt};
}

// All nonzero v with |v|_inf <= max_norm such that c(p) = c(p-v) whenever
// both p and p-v lie in the window. Window-relative only: presence certifies
// nothing globally, absence rules out small periods on this window.
inline std::vector<Vec2> find_periods(const Configuration& c, WindowBounds w, Int max_norm) {
    if (max_norm < 1) throw std::invalid_argument("find_periods: max_norm must be positive");
    if (w.width() <= 2 * max_norm || w.height() <= 2 * max_norm)
        throw std::invalid_argument("find_periods: window must exceed 2*max_norm in both dimensions");

    Window grid(w);
    for (Int y = w.y0; y <= w.y1; ++y)
        for (Int x = w.x0; x <= w.x1; ++x) grid.at({x, y}) = c.eval({x, y});

    std::vector<Vec2> periods;
    for (Int vx = -max_norm; vx <= max_norm; ++vx)
        for (Int vy = -max_norm; vy <= max_norm; ++vy) {
            Vec2 v{vx, vy};
            if (v.is_zero()) continue;
            bool ok = true;
            for (Int y = w.y0; y <= w.y1 && ok; ++y) {
                for (Int x = w.x0; x <= w.x1; ++x) {
                    Vec2 p{x, y};
                    if (!w.contains(p - v)) continue;
                    if (grid.at(p) != grid.at(p - v)) { ok = false; break; }
                }
            }
            if (ok) periods.push_back(v);
        }
    std::sort(periods.begin(), periods.end());
    return periods;
}

struct NotBinaryError : std::runtime_error {
    NotBinaryError(Vec2 p, const Rat& v)
        : std::runtime_error("configuration is not binary at " + std::to_string(p.x) + "," +
                             std::to_string(p.y) + " (value " + rat_str(v) + ")"),
          at(p), value(v) {}
    Vec2 at;
    Rat value;
};

struct NotAnnihilatedError : std::runtime_error {
    NotAnnihilatedError(Vec2 p, const Rat& v)
        : std::runtime_error("split annihilator fails at " + std::to_string(p.x) + "," +
                             std::to_string(p.y) + " (value " + rat_str(v) + ")"),
          at(p), value(v) {}
    Vec2 at;
    Rat value;
};

struct SplitResult {
    std::set<Vec2> vertical_cosets;   // cosets invariant under n*e2
    std::set<Vec2> horizontal_cosets; // cosets invariant under n*e1
    std::set<Vec2> ambiguous_cosets;  // constant both ways; tie-broken to vertical
    Configuration vertical_component;
    Configuration horizontal_component;
    AnnihilationCertificate certificate;
};

// The coset classification behind "order 2 implies weakly periodic": on each
// coset (k,l) of nZ x nZ the restriction d(a,b) = c(k+na, l+nb) is constant
// along columns (then the coset goes vertical, period n*e2) or along rows
// (horizontal, period n*e1). The two restrictions of c sum to c on the
// window and are 1-periodic there.
inline SplitResult split_order2(const Configuration& c, Int n, WindowBounds w) {
    if (n < 1) throw std::invalid_argument("split_order2: n must be positive");

    Window grid(w);
    for (Int y = w.y0; y <= w.y1; ++y)
        for (Int x = w.x0; x <= w.x1; ++x) {
            Rat v = c.eval({x, y});
            if (v != Rat(0) && v != Rat(1)) throw NotBinaryError({x, y}, v);
            grid.at({x, y}) = v;
        }

    LaurentPoly2 one = LaurentPoly2::constant(Rat(1));
    LaurentPoly2 f = (U({0, n}) - one) * (U({n, 0}) - one);
    AnnihilationCertificate cert = certify_annihilation(f, c, w);
    if (cert.failed()) throw NotAnnihilatedError(cert.witness, cert.value);

    SplitResult res{{}, {}, {}, {}, {}, cert};
    std::map<Vec2, Rat> vert, horz;
    for (Int k = 0; k < n; ++k)
        for (Int l = 0; l < n; ++l) {
            Int a0 = -floor_div(k - w.x0, n), a1 = floor_div(w.x1 - k, n);
            Int b0 = -floor_div(l - w.y0, n), b1 = floor_div(w.y1 - l, n);
            if (a0 > a1 || b0 > b1) continue; // coset has no cell in the window
            auto cell = [&](Int a, Int b) -> const Rat& {
                return grid.at({k + n * a, l + n * b});
            };
            bool cols_constant = true;
            for (Int a = a0; a <= a1 && cols_constant; ++a)
                for (Int b = b0 + 1; b <= b1; ++b)
                    if (cell(a, b) != cell(a, b0)) { cols_constant = false; break; }
            bool rows_constant = true;
            for (Int b = b0; b <= b1 && rows_constant; ++b)
                for (Int a = a0 + 1; a <= a1; ++a)
                    if (cell(a, b) != cell(a0, b)) { rows_constant = false; break; }

            Vec2 coset{k, l};
            bool vertical;
            if (cols_constant) {
                vertical = true;
                if (rows_constant) res.ambiguous_cosets.insert(coset);
            } else if (rows_constant) {
                vertical = false;
            } else {
                // ruled out by the annihilator precondition on binary data
                throw std::logic_error("split_order2: coset is neither row- nor column-constant");
            }
            (vertical ? res.vertical_cosets : res.horizontal_cosets).insert(coset);
            auto& target = vertical ? vert : horz;
            for (Int a = a0; a <= a1; ++a)
                for (Int b = b0; b <= b1; ++b) {
                    Vec2 p{k + n * a, l + n * b};
                    const Rat& v = grid.at(p);
                    if (v != Rat(0)) target[p] = v;
                }
        }

    res.vertical_component = Configuration::finite_support(std::move(vert));
    res.horizontal_component = Configuration::finite_support(std::move(horz));
    if (res.certificate.kind != CertKind::ExactPeriodic)
        res.certificate.kind = CertKind::WindowChecked;
    return res;
}

} // namespace latcfg
