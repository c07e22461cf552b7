// latcfg command-line front-end. Every command prints a short human-readable
// summary followed by JSON-lines records ending in a summary record.
// Exit codes: 0 success/verified, 1 verified-false (violation found or check
// not possible), 2 usage/parse errors.

#include "latcfg/characters.hpp"
#include "latcfg/cluster.hpp"
#include "latcfg/config.hpp"
#include "latcfg/config_io.hpp"
#include "latcfg/laurent.hpp"
#include "latcfg/report.hpp"
#include "latcfg/tiling.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace latcfg;

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return in;
}

Cluster load_cluster(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_cluster(in);
}

TorusTiling load_tiling(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_tiling(in);
}

Configuration load_config(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_config(in);
}

LaurentPoly2 load_poly(const std::string& path) {
    auto in = open_or_throw(path);
    return parse_poly2(in);
}

WindowBounds window_from(const std::vector<Int>& w) {
    return WindowBounds(w.at(0), w.at(1), w.at(2), w.at(3));
}

std::string dirset_line(const DirectionSet& ds) {
    std::ostringstream os;
    os << "directions:";
    if (ds.empty()) {
        os << " (none)";
    } else {
        for (Direction d : ds) os << " (" << d.dx << "," << d.dy << ")";
    }
    os << ", |dir|=" << ds.size();
    return os.str();
}

int cmd_dirset(const std::string& cluster_file) {
    Cluster F = load_cluster(cluster_file);
    DirectionSet ds = dir(F);
    std::cout << dirset_line(ds) << "\n";
    RunReport rep;
    rep.command = "dirset";
    rep.inputs = {{"cluster", cluster_file}, {"size", F.size()}};
    rep.results = {{"directions", to_json(ds)}, {"cardinality", ds.size()}};
    std::cout << rep.to_jsonl() << "\n";
    return 0;
}

int cmd_verify(const std::string& cluster_file, const std::string& tiling_file) {
    Cluster F = load_cluster(cluster_file);
    TorusTiling T = load_tiling(tiling_file);
    auto violation = verify_tiling(F, T);
    RunReport rep;
    rep.command = "verify";
    rep.inputs = {{"cluster", cluster_file},
                  {"tiling", tiling_file},
                  {"torus", json::array({T.mod_x(), T.mod_y()})},
                  {"anchors", T.anchors().size()}};
    if (violation) {
        std::cout << "violation at (" << violation->p.x << "," << violation->p.y
                  << "): count " << violation->count << "\n";
        rep.results = {{"ok", false},
                       {"violation", {{"p", to_json(violation->p)}, {"count", violation->count}}}};
        std::cout << rep.to_jsonl() << "\n";
        return 1;
    }
    std::cout << "ok\n";
    rep.results = {{"ok", true}};
    std::cout << rep.to_jsonl() << "\n";
    return 0;
}

int cmd_enumerate(const std::string& cluster_file, Int mx, Int my, int jobs) {
    Cluster F = load_cluster(cluster_file);
    auto tilings = enumerate_tilings(F, mx, my, jobs);
    std::cout << "tilings: " << tilings.size() << "\n";
    for (const TorusTiling& T : tilings) {
        json anchors = json::array();
        for (Vec2 a : T.anchors()) anchors.push_back(to_json(a));
        std::cout << json{{"type", "tiling"}, {"anchors", anchors}}.dump() << "\n";
    }
    RunReport rep;
    rep.command = "enumerate";
    rep.inputs = {{"cluster", cluster_file}, {"torus", json::array({mx, my})}, {"jobs", jobs}};
    rep.results = {{"count", tilings.size()}};
    std::cout << rep.to_jsonl() << "\n";
    return 0;
}

int cmd_dilate(const std::string& cluster_file, const std::string& tiling_file,
               const std::vector<Int>& alphas) {
    Cluster F = load_cluster(cluster_file);
    TorusTiling T = load_tiling(tiling_file);
    RunReport rep;
    rep.command = "dilate";
    rep.inputs = {{"cluster", cluster_file}, {"tiling", tiling_file}, {"alphas", alphas}};
    json verdicts = json::array();
    bool bad = false;
    for (Int alpha : alphas) {
        bool coprime = std::gcd(alpha, static_cast<Int>(F.size())) == 1;
        json v{{"alpha", alpha}, {"coprime", coprime}};
        if (!coprime)
            std::cout << "alpha " << alpha
                      << ": warning: gcd(alpha,|F|) != 1, dilation lemma does not apply\n";
        try {
            auto violation = check_dilation(F, T, alpha);
            if (violation) {
                v["ok"] = false;
                v["violation"] = {{"p", to_json(violation->p)}, {"count", violation->count}};
                std::cout << "alpha " << alpha << ": violation at (" << violation->p.x << ","
                          << violation->p.y << "): count " << violation->count << "\n";
                if (coprime) bad = true;
            } else {
                v["ok"] = true;
                std::cout << "alpha " << alpha << ": ok\n";
            }
        } catch (const NonInjectiveDilationError& e) {
            v["error"] = e.what();
            std::cout << "alpha " << alpha << ": error: " << e.what() << "\n";
            if (coprime) bad = true;
        }
        verdicts.push_back(v);
    }
    rep.results = {{"verdicts", verdicts}};
    std::cout << rep.to_jsonl() << "\n";
    return bad ? 1 : 0;
}

int cmd_annihilate(const std::string& config_file, const std::string& poly_file,
                   const std::vector<Int>& window, const std::string& dump_file) {
    Configuration c = load_config(config_file);
    LaurentPoly2 f = load_poly(poly_file);
    WindowBounds w = window_from(window);
    AnnihilationCertificate cert = certify_annihilation(f, c, w);
    if (!dump_file.empty()) {
        std::ofstream out(dump_file);
        if (!out) throw std::invalid_argument("cannot write file: " + dump_file);
        out << print_window(apply_poly(f, c, w));
        std::cout << "wrote " << dump_file << "\n";
    }
    RunReport rep;
    rep.command = "annihilate";
    rep.inputs = {{"config", config_file},
                  {"poly", poly_file},
                  {"window", json::array({w.x0, w.y0, w.x1, w.y1})}};
    rep.results = {{"certificate", to_json(cert)}};
    rep.certificates = {cert_kind_name(cert.kind)};
    if (cert.failed()) {
        std::cout << "certificate: Fails at (" << cert.witness.x << "," << cert.witness.y
                  << ") value " << rat_str(cert.value) << "\n";
        std::cout << rep.to_jsonl() << "\n";
        return 1;
    }
    std::cout << "certificate: " << cert_kind_name(cert.kind) << "\n";
    std::cout << rep.to_jsonl() << "\n";
    return 0;
}

int cmd_split2(const std::string& config_file, Int n, const std::vector<Int>& window,
               const std::string& out_prefix) {
    Configuration c = load_config(config_file);
    WindowBounds w = window_from(window);
    SplitResult res = split_order2(c, n, w);

    for (Int k = 0; k < n; ++k)
        for (Int l = 0; l < n; ++l) {
            Vec2 coset{k, l};
            bool vert = res.vertical_cosets.count(coset) != 0;
            bool horz = res.horizontal_cosets.count(coset) != 0;
            if (!vert && !horz) continue;
            std::cout << "coset (" << k << "," << l << "): " << (vert ? "vertical" : "horizontal");
            if (res.ambiguous_cosets.count(coset)) std::cout << " (ambiguous)";
            std::cout << "\n";
        }

    std::string vfile = out_prefix + ".vertical.cfg";
    std::string hfile = out_prefix + ".horizontal.cfg";
    std::ofstream(vfile) << print_config(res.vertical_component);
    std::ofstream(hfile) << print_config(res.horizontal_component);
    std::cout << "components written: " << vfile << " " << hfile << "\n";

    // verification summary: binary, disjoint, summing to c on the window
    bool sum_ok = true;
    for (Int y = w.y0; y <= w.y1 && sum_ok; ++y)
        for (Int x = w.x0; x <= w.x1; ++x) {
            Vec2 p{x, y};
            Rat vv = res.vertical_component.eval(p), hv = res.horizontal_component.eval(p);
            if (vv + hv != c.eval(p) || (vv != Rat(0) && hv != Rat(0))) { sum_ok = false; break; }
        }
    std::cout << "components verified: " << (sum_ok ? "ok" : "FAILED") << "\n";

    RunReport rep;
    rep.command = "split2";
    rep.inputs = {{"config", config_file},
                  {"n", n},
                  {"window", json::array({w.x0, w.y0, w.x1, w.y1})},
                  {"out", out_prefix}};
    json vc = json::array(), hc = json::array(), ac = json::array();
    for (Vec2 v : res.vertical_cosets) vc.push_back(to_json(v));
    for (Vec2 v : res.horizontal_cosets) hc.push_back(to_json(v));
    for (Vec2 v : res.ambiguous_cosets) ac.push_back(to_json(v));
    rep.results = {{"vertical_cosets", vc},
                   {"horizontal_cosets", hc},
                   {"ambiguous_cosets", ac},
                   {"components_verified", sum_ok},
                   {"certificate", to_json(res.certificate)}};
    rep.certificates = {cert_kind_name(res.certificate.kind)};
    std::cout << rep.to_jsonl() << "\n";
    return sum_ok ? 0 : 1;
}

int cmd_prime_square(const std::string& cluster_file) {
    Cluster F = load_cluster(cluster_file);
    PrimeSquareReport psr = prime_square_report(F);
    std::cout << "p = " << psr.p << "\n";
    std::cout << dirset_line(psr.dir_set) << "\n";
    if (auto* r = std::get_if<IsRectangle>(&psr.rectangle)) {
        std::cout << "rectangle: yes, basis (" << r->d1.dx << "," << r->d1.dy << ") ("
                  << r->d2.dx << "," << r->d2.dy << ")"
                  << (r->axes_unimodular ? "" : " [non-unimodular basis, direction frame]")
                  << "\n";
    } else if (auto* na = std::get_if<NotApplicable>(&psr.rectangle)) {
        std::cout << "rectangle: not applicable (" << na->reason << ")\n";
    } else {
        std::cout << "rectangle: COUNTEREXAMPLE WITNESS\n";
    }
    std::cout << "conclusion: " << psr.conclusion << "\n";

    for (const DivisibilityReport& dr : psr.directions)
        std::cout << to_json(dr).dump() << "\n";
    RunReport rep;
    rep.command = "prime-square";
    rep.inputs = {{"cluster", cluster_file}, {"size", F.size()}};
    rep.results = {{"p", psr.p},
                   {"rectangle", to_json(psr.rectangle)},
                   {"dir", to_json(psr.dir_set)},
                   {"order_bound", psr.order_bound},
                   {"order_le_2", psr.order_le_2},
                   {"conclusion", psr.conclusion}};
    std::cout << rep.to_jsonl() << "\n";
    return 0;
}

int cmd_generate(const std::string& kind, const std::vector<Int>& alpha,
                 std::optional<std::uint64_t> seed_opt, const std::string& out_file) {
    Configuration c;
    json inputs{{"kind", kind}, {"out", out_file}};
    if (kind == "sturmian") {
        QuadIrrational a(alpha.at(0), alpha.at(1), alpha.at(2), alpha.at(3));
        c = sturmian_config(a);
        inputs["alpha"] = alpha;
    } else {
        std::uint64_t seed = 1;
        if (const char* env = std::getenv("LATCFG_SEED")) seed = std::stoull(env);
        if (seed_opt) seed = *seed_opt;
        c = random_product_config(seed);
        inputs["seed"] = seed;
    }
    std::ofstream out(out_file);
    if (!out) throw std::invalid_argument("cannot write file: " + out_file);
    out << print_config(c);
    std::cout << "wrote " << out_file << "\n";
    RunReport rep;
    rep.command = "generate";
    rep.inputs = inputs;
    rep.results = {{"ok", true}};
    std::cout << rep.to_jsonl() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact analysis of low-complexity configurations and tilings of Z^2"};
    app.require_subcommand(1);
    std::function<int()> run;

    // dirset
    {
        auto* sub = app.add_subcommand("dirset", "direction set of a cluster");
        auto cluster = std::make_shared<std::string>();
        sub->add_option("cluster", *cluster, "cluster file")->required();
        sub->callback([cluster, &run] { run = [=] { return cmd_dirset(*cluster); }; });
    }
    // verify
    {
        auto* sub = app.add_subcommand("verify", "verify a torus tiling");
        auto cluster = std::make_shared<std::string>();
        auto tiling = std::make_shared<std::string>();
        sub->add_option("cluster", *cluster, "cluster file")->required();
        sub->add_option("tiling", *tiling, "tiling file")->required();
        sub->callback([=, &run] { run = [=] { return cmd_verify(*cluster, *tiling); }; });
    }
    // enumerate
    {
        auto* sub = app.add_subcommand("enumerate", "enumerate all tilings of a torus");
        auto cluster = std::make_shared<std::string>();
        auto mx = std::make_shared<Int>(0);
        auto my = std::make_shared<Int>(0);
        auto jobs = std::make_shared<int>(1);
        sub->add_option("cluster", *cluster, "cluster file")->required();
        sub->add_option("mx", *mx, "torus width")->required();
        sub->add_option("my", *my, "torus height")->required();
        sub->add_option("--jobs", *jobs, "parallel branches (default 1)");
        sub->callback([=, &run] { run = [=] { return cmd_enumerate(*cluster, *mx, *my, *jobs); }; });
    }
    // dilate
    {
        auto* sub = app.add_subcommand("dilate", "check the dilation lemma on a tiling");
        auto cluster = std::make_shared<std::string>();
        auto tiling = std::make_shared<std::string>();
        auto alphas = std::make_shared<std::vector<Int>>();
        sub->add_option("cluster", *cluster, "cluster file")->required();
        sub->add_option("tiling", *tiling, "tiling file")->required();
        sub->add_option("--alpha", *alphas, "dilation factors")->required()->expected(-1);
        sub->callback([=, &run] { run = [=] { return cmd_dilate(*cluster, *tiling, *alphas); }; });
    }
    // annihilate
    {
        auto* sub = app.add_subcommand("annihilate", "certify f*c = 0");
        auto config = std::make_shared<std::string>();
        auto poly = std::make_shared<std::string>();
        auto window = std::make_shared<std::vector<Int>>(std::vector<Int>{-50, -50, 50, 50});
        auto dump = std::make_shared<std::string>();
        sub->add_option("config", *config, "configuration file")->required();
        sub->add_option("poly", *poly, "polynomial file")->required();
        sub->add_option("--window", *window, "x0 y0 x1 y1 (default -50 -50 50 50)")->expected(4);
        sub->add_option("--dump", *dump, "write the f*c window grid to this file");
        sub->callback(
            [=, &run] { run = [=] { return cmd_annihilate(*config, *poly, *window, *dump); }; });
    }
    // split2
    {
        auto* sub = app.add_subcommand("split2", "order-2 weakly-periodic splitting");
        auto config = std::make_shared<std::string>();
        auto n = std::make_shared<Int>(0);
        auto window = std::make_shared<std::vector<Int>>(std::vector<Int>{-24, -24, 24, 24});
        auto out = std::make_shared<std::string>("split");
        sub->add_option("config", *config, "configuration file")->required();
        sub->add_option("n", *n, "coset modulus")->required();
        sub->add_option("--window", *window, "x0 y0 x1 y1 (default -24 -24 24 24)")->expected(4);
        sub->add_option("--out", *out, "output prefix (default 'split')");
        sub->callback([=, &run] { run = [=] { return cmd_split2(*config, *n, *window, *out); }; });
    }
    // prime-square
    {
        auto* sub = app.add_subcommand("prime-square", "prime-square cluster analysis");
        auto cluster = std::make_shared<std::string>();
        sub->add_option("cluster", *cluster, "cluster file (|F| = p^2)")->required();
        sub->callback([=, &run] { run = [=] { return cmd_prime_square(*cluster); }; });
    }
    // generate
    {
        auto* sub = app.add_subcommand("generate", "write a configuration spec file");
        auto kind = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::vector<Int>>();
        auto seed = std::make_shared<std::uint64_t>(0);
        auto has_seed = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        sub->add_option("kind", *kind, "sturmian | random")
            ->required()
            ->check(CLI::IsMember({"sturmian", "random"}));
        sub->add_option("--alpha", *alpha, "p q d r for (p+q*sqrt(d))/r")->expected(4);
        auto* seed_opt = sub->add_option("--seed", *seed, "seed for the random generator");
        sub->add_option("--out", *out, "output file")->required();
        sub->callback([=, &run] {
            *has_seed = seed_opt->count() > 0;
            run = [=] {
                if (*kind == "sturmian" && alpha->size() != 4)
                    throw std::invalid_argument("generate sturmian requires --alpha p q d r");
                std::optional<std::uint64_t> s;
                if (*has_seed) s = *seed;
                return cmd_generate(*kind, *alpha, s, *out);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const latcfg::NotBinaryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const latcfg::NotAnnihilatedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const latcfg::NonInjectiveDilationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
