#pragma once

// Text formats for configurations and window dumps. Both round-trip
// losslessly; '#' starts a comment anywhere.
//
// Configuration file:
//   config
//   component finite_support
//   point <x> <y> <value>
//   end
//   component biperiodic
//   lattice <a> <b> <c>          basis (a,0),(c,b) in Hermite normal form
//   entry <x> <y> <value>        coset representative -> value
//   end
//   component one_periodic
//   period <x> <y>
//   transversal <x> <y>          optional; default complements the period
//   lane periodic <v0> <v1> ...
//   lane explicit <default>      followed by `at <index> <value>` lines
//   lane sturmian <p> <q> <d> <r>
//   end
//   component sturmian_diff
//   alpha <p> <q> <d> <r>
//   end
//   component random_product
//   seed <n>
//   end
//   end
//
// Window dump: header `window x0 y0 x1 y1`, then height rows (y increasing)
// of width space-separated rational values.

#include "latcfg/config.hpp"

#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace latcfg {

namespace detail {

inline std::vector<std::string> tokenize_line(const std::string& raw) {
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    return toks;
}

inline Int to_int(const std::string& s, int lineno) {
    try {
        std::size_t used = 0;
        Int v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw std::invalid_argument("config parse error at line " + std::to_string(lineno) +
                                    ": bad integer '" + s + "'");
    }
}

} // namespace detail

inline Configuration parse_config(std::istream& in) {
    using detail::to_int;
    std::vector<Component> comps;
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("config parse error at line " + std::to_string(lineno) +
                                    ": " + msg);
    };
    auto next_tokens = [&](std::vector<std::string>& toks) {
        while (std::getline(in, raw)) {
            ++lineno;
            toks = detail::tokenize_line(raw);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_tokens(toks) || toks[0] != "config") fail("expected 'config' header");

    while (true) {
        if (!next_tokens(toks)) fail("unexpected end of file");
        if (toks[0] == "end") break;
        if (toks[0] != "component" || toks.size() != 2) fail("expected 'component <kind>'");
        const std::string kind = toks[1];

        if (kind == "finite_support") {
            std::map<Vec2, Rat> values;
            while (next_tokens(toks) && toks[0] != "end") {
                if (toks[0] != "point" || toks.size() != 4) fail("expected 'point x y value'");
                Rat v = parse_rat(toks[3]);
                if (v != Rat(0)) values[{to_int(toks[1], lineno), to_int(toks[2], lineno)}] = v;
            }
            comps.push_back(FiniteSupportComp{std::move(values)});
        } else if (kind == "biperiodic") {
            std::optional<Lattice2> lat;
            std::map<Vec2, Rat> table;
            while (next_tokens(toks) && toks[0] != "end") {
                if (toks[0] == "lattice" && toks.size() == 4) {
                    lat = Lattice2::hnf(to_int(toks[1], lineno), to_int(toks[2], lineno),
                                        to_int(toks[3], lineno));
                } else if (toks[0] == "entry" && toks.size() == 4) {
                    table[{to_int(toks[1], lineno), to_int(toks[2], lineno)}] =
                        parse_rat(toks[3]);
                } else {
                    fail("expected 'lattice a b c' or 'entry x y value'");
                }
            }
            if (!lat) fail("biperiodic component without lattice");
            std::map<Vec2, Rat> reduced;
            for (auto& [p, v] : table) reduced[lat->reduce(p)] = v;
            comps.push_back(BiperiodicComp{*lat, std::move(reduced)});
        } else if (kind == "one_periodic") {
            std::optional<Vec2> period, transversal;
            std::optional<LaneGenerator> lane;
            bool in_explicit = false;
            ExplicitTable table;
            while (next_tokens(toks) && toks[0] != "end") {
                if (toks[0] == "period" && toks.size() == 3) {
                    period = Vec2{to_int(toks[1], lineno), to_int(toks[2], lineno)};
                } else if (toks[0] == "transversal" && toks.size() == 3) {
                    transversal = Vec2{to_int(toks[1], lineno), to_int(toks[2], lineno)};
                } else if (toks[0] == "lane" && toks.size() >= 2 && toks[1] == "periodic") {
                    if (toks.size() < 3) fail("periodic lane needs at least one value");
                    PeriodicWord w;
                    for (std::size_t i = 2; i < toks.size(); ++i)
                        w.values.push_back(parse_rat(toks[i]));
                    lane = LaneGenerator(std::move(w));
                } else if (toks[0] == "lane" && toks.size() == 3 && toks[1] == "explicit") {
                    table.default_value = parse_rat(toks[2]);
                    in_explicit = true;
                } else if (toks[0] == "lane" && toks.size() == 6 && toks[1] == "sturmian") {
                    lane = LaneGenerator(SturmianWord{QuadIrrational(
                        to_int(toks[2], lineno), to_int(toks[3], lineno), to_int(toks[4], lineno),
                        to_int(toks[5], lineno))});
                } else if (toks[0] == "at" && toks.size() == 3 && in_explicit) {
                    table.overrides[to_int(toks[1], lineno)] = parse_rat(toks[2]);
                } else {
                    fail("unexpected line in one_periodic component");
                }
            }
            if (in_explicit) lane = LaneGenerator(std::move(table));
            if (!period || !lane) fail("one_periodic component needs period and lane");
            if (transversal)
                comps.push_back(OnePeriodicComp(*period, *transversal, std::move(*lane)));
            else
                comps.push_back(OnePeriodicComp(*period, std::move(*lane)));
        } else if (kind == "sturmian_diff") {
            std::optional<QuadIrrational> alpha;
            while (next_tokens(toks) && toks[0] != "end") {
                if (toks[0] == "alpha" && toks.size() == 5)
                    alpha = QuadIrrational(to_int(toks[1], lineno), to_int(toks[2], lineno),
                                           to_int(toks[3], lineno), to_int(toks[4], lineno));
                else
                    fail("expected 'alpha p q d r'");
            }
            if (!alpha) fail("sturmian_diff component needs alpha");
            comps.push_back(SturmianDiffComp{*alpha});
        } else if (kind == "random_product") {
            std::optional<std::uint64_t> seed;
            while (next_tokens(toks) && toks[0] != "end") {
                if (toks[0] == "seed" && toks.size() == 2)
                    seed = static_cast<std::uint64_t>(std::stoull(toks[1]));
                else
                    fail("expected 'seed n'");
            }
            if (!seed) fail("random_product component needs seed");
            comps.push_back(RandomProductComp{*seed});
        } else {
            fail("unknown component kind '" + kind + "'");
        }
    }
    return Configuration(std::move(comps));
}

inline Configuration parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline std::string print_config(const Configuration& c) {
    std::ostringstream os;
    os << "config\n";
    for (const Component& comp : c.components()) {
        if (auto* fs = std::get_if<FiniteSupportComp>(&comp)) {
            os << "component finite_support\n";
            for (auto& [p, v] : fs->values)
                os << "point " << p.x << " " << p.y << " " << rat_str(v) << "\n";
            os << "end\n";
        } else if (auto* bp = std::get_if<BiperiodicComp>(&comp)) {
            os << "component biperiodic\n";
            os << "lattice " << bp->lattice.a() << " " << bp->lattice.b() << " "
               << bp->lattice.c() << "\n";
            for (auto& [p, v] : bp->table)
                os << "entry " << p.x << " " << p.y << " " << rat_str(v) << "\n";
            os << "end\n";
        } else if (auto* op = std::get_if<OnePeriodicComp>(&comp)) {
            os << "component one_periodic\n";
            os << "period " << op->period().x << " " << op->period().y << "\n";
            os << "transversal " << op->transversal().x << " " << op->transversal().y << "\n";
            if (auto* w = op->lane().get_if<PeriodicWord>()) {
                os << "lane periodic";
                for (const Rat& v : w->values) os << " " << rat_str(v);
                os << "\n";
            } else if (auto* t = op->lane().get_if<ExplicitTable>()) {
                os << "lane explicit " << rat_str(t->default_value) << "\n";
                for (auto& [i, v] : t->overrides)
                    os << "at " << i << " " << rat_str(v) << "\n";
            } else {
                auto* s = op->lane().get_if<SturmianWord>();
                os << "lane sturmian " << s->alpha.p() << " " << s->alpha.q() << " "
                   << s->alpha.d() << " " << s->alpha.r() << "\n";
            }
            os << "end\n";
        } else if (auto* st = std::get_if<SturmianDiffComp>(&comp)) {
            os << "component sturmian_diff\n";
            os << "alpha " << st->alpha.p() << " " << st->alpha.q() << " " << st->alpha.d() << " "
               << st->alpha.r() << "\n";
            os << "end\n";
        } else {
            const auto& rp = std::get<RandomProductComp>(comp);
            os << "component random_product\n";
            os << "seed " << rp.seed << "\n";
            os << "end\n";
        }
    }
    os << "end\n";
    return os.str();
}

inline std::string print_window(const Window& w) {
    std::ostringstream os;
    const WindowBounds& b = w.bounds();
    os << "window " << b.x0 << " " << b.y0 << " " << b.x1 << " " << b.y1 << "\n";
    for (Int y = b.y0; y <= b.y1; ++y) {
        for (Int x = b.x0; x <= b.x1; ++x) {
            if (x > b.x0) os << " ";
            os << rat_str(w.at({x, y}));
        }
        os << "\n";
    }
    return os.str();
}

inline Window parse_window(std::istream& in) {
    std::string raw;
    int lineno = 0;
    std::vector<std::string> toks;
    while (std::getline(in, raw)) {
        ++lineno;
        toks = detail::tokenize_line(raw);
        if (!toks.empty()) break;
    }
    if (toks.size() != 5 || toks[0] != "window")
        throw std::invalid_argument("window parse error: expected 'window x0 y0 x1 y1' header");
    WindowBounds b(detail::to_int(toks[1], lineno), detail::to_int(toks[2], lineno),
                   detail::to_int(toks[3], lineno), detail::to_int(toks[4], lineno));
    Window w(b);
    for (Int y = b.y0; y <= b.y1; ++y) {
        do {
            if (!std::getline(in, raw))
                throw std::invalid_argument("window parse error: missing row " +
                                            std::to_string(y));
            ++lineno;
            toks = detail::tokenize_line(raw);
        } while (toks.empty());
        if (static_cast<Int>(toks.size()) != b.width())
            throw std::invalid_argument("window parse error at line " + std::to_string(lineno) +
                                        ": expected " + std::to_string(b.width()) + " values");
        for (Int x = b.x0; x <= b.x1; ++x)
            w.at({x, y}) = parse_rat(toks[static_cast<std::size_t>(x - b.x0)]);
    }
    return w;
}

inline Window parse_window(const std::string& text) {
    std::istringstream in(text);
    return parse_window(in);
}

} // namespace latcfg
