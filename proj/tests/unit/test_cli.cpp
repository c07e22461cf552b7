// Drives the installed binary end to end: exit-code contract, output
// formats, golden lines, and determinism of generated files.

#include "latcfg/config_io.hpp"
#include "latcfg/laurent.hpp"
#include "latcfg/report.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace latcfg;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string last_line() const {
        std::istringstream is(out);
        std::string line, last;
        while (std::getline(is, line))
            if (!line.empty()) last = line;
        return last;
    }
    bool has_line(const std::string& needle) const {
        std::istringstream is(out);
        std::string line;
        while (std::getline(is, line))
            if (line == needle) return true;
        return false;
    }
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    std::string cmd = std::string(LATCFG_BIN) + " " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(LATCFG_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("latcfg_test_" + name);
}

} // namespace

TEST_CASE("cli dirset") {
    auto r = run_cli("dirset " + data("cluster_l_tromino.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.has_line("directions: (none), |dir|=0"));

    r = run_cli("dirset " + data("cluster_plus.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.has_line("directions: (none), |dir|=0"));

    r = run_cli("dirset " + data("cluster_square2.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.has_line("directions: (0,1) (1,0), |dir|=2"));

    r = run_cli("dirset " + data("cluster_octagon.txt"));
    CHECK(r.exit_code == 0);
    CHECK(r.has_line("directions: (-1,1) (0,1) (1,0) (1,1), |dir|=4"));

    // summary record round-trips through the report type
    json j = json::parse(r.last_line());
    RunReport rep = RunReport::from_json(j);
    CHECK(rep.command == "dirset");
    CHECK(rep.to_jsonl() == r.last_line());
}

TEST_CASE("cli verify") {
    auto ok = run_cli("verify " + data("cluster_square2.txt") + " " + data("tiling_grid_4x4.txt"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.has_line("ok"));

    auto bad = run_cli("verify " + data("cluster_square2.txt") + " " + data("tiling_bad_4x4.txt"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.has_line("violation at (2,2): count 0"));

    auto l = run_cli("verify " + data("cluster_l_tromino.txt") + " " + data("tiling_l_6x6.txt"));
    CHECK(l.exit_code == 0);
}

TEST_CASE("cli enumerate") {
    auto r = run_cli("enumerate " + data("cluster_square2.txt") + " 4 4");
    CHECK(r.exit_code == 0);
    json j = json::parse(r.last_line());
    Int count = j["results"]["count"].get<Int>();
    CHECK(count > 0);

    // deterministic across job counts
    auto r4 = run_cli("enumerate " + data("cluster_square2.txt") + " 4 4 --jobs 4");
    CHECK(r4.out == r.out.substr(0, r.out.size() - r.last_line().size() - 1) +
                        json::parse(r4.last_line()).dump() + "\n");
    CHECK(json::parse(r4.last_line())["results"]["count"].get<Int>() == count);

    auto err = run_cli("enumerate " + data("cluster_l_tromino.txt") + " 2 2");
    CHECK(err.exit_code == 2);
}

TEST_CASE("cli dilate") {
    std::string args = "dilate " + data("cluster_l_tromino.txt") + " " + data("tiling_l_6x6.txt");
    auto r = run_cli(args + " --alpha 2");
    CHECK(r.exit_code == 0);
    CHECK(r.has_line("alpha 2: ok"));

    // non-coprime alpha warns but stays informational
    auto w = run_cli(args + " --alpha 3");
    CHECK(w.exit_code == 0);
    CHECK(w.out.find("warning: gcd(alpha,|F|) != 1") != std::string::npos);

    auto multi = run_cli(args + " --alpha 2 4 5");
    CHECK(multi.exit_code == 0);
    CHECK(multi.has_line("alpha 2: ok"));
    CHECK(multi.has_line("alpha 4: ok"));
    CHECK(multi.has_line("alpha 5: ok"));
}

TEST_CASE("cli annihilate") {
    auto exact = run_cli("annihilate " + data("config_stripes_y2.txt") + " " +
                         data("poly_y2_minus_1.txt"));
    CHECK(exact.exit_code == 0);
    CHECK(exact.has_line("certificate: ExactPeriodic"));

    auto window = run_cli("annihilate " + data("config_sturmian_sqrt2.txt") + " " +
                          data("poly_triple.txt"));
    CHECK(window.exit_code == 0);
    CHECK(window.has_line("certificate: WindowChecked"));

    auto fails = run_cli("annihilate " + data("config_sturmian_sqrt2.txt") + " " +
                         data("poly_x_minus_1.txt"));
    CHECK(fails.exit_code == 1);
    CHECK(fails.out.find("certificate: Fails at (") != std::string::npos);
}

TEST_CASE("the shipped triple-product fixture matches the factored form") {
    std::ifstream in(data("poly_triple.txt"));
    LaurentPoly2 f = parse_poly2(in);
    LaurentPoly2 one = LaurentPoly2::constant(Rat(1));
    CHECK(f == (U({1, 0}) - one) * (U({0, 1}) - one) * (U({1, -1}) - one));
}

TEST_CASE("cli split2") {
    // even/odd column configuration generated from explicit lanes
    Int range = 30;
    QuadIrrational ua{-1, 1, 2, 1}, va{-1, 1, 3, 1};
    ExplicitTable t1;
    t1.default_value = Rat(0);
    for (Int i = -range; i <= range; ++i)
        if (floor_mod(i, 2) == 0) t1.overrides[i] = Rat(ua.floor_times(i + 1) - ua.floor_times(i));
    ExplicitTable t2;
    t2.default_value = Rat(0);
    for (Int j = -range; j <= range; ++j)
        t2.overrides[2 * j + 1] = Rat(va.floor_times(j + 1) - va.floor_times(j));
    Configuration c({OnePeriodicComp({0, 1}, LaneGenerator(std::move(t1))),
                     OnePeriodicComp({2, 0}, LaneGenerator(std::move(t2)))});

    fs::path cfg = temp_file("evenodd.cfg");
    std::ofstream(cfg) << print_config(c);
    fs::path prefix = temp_file("split_out");

    auto r = run_cli("split2 " + cfg.string() + " 2 --window -12 -12 12 12 --out " +
                     prefix.string());
    CHECK(r.exit_code == 0);
    CHECK(r.has_line("coset (0,0): vertical"));
    CHECK(r.has_line("coset (0,1): vertical"));
    CHECK(r.has_line("coset (1,0): horizontal"));
    CHECK(r.has_line("coset (1,1): horizontal"));
    CHECK(r.has_line("components verified: ok"));

    // the written components parse and sum to c on the window
    Configuration vert = parse_config(slurp(prefix.string() + ".vertical.cfg"));
    Configuration horz = parse_config(slurp(prefix.string() + ".horizontal.cfg"));
    for (Int yy = -12; yy <= 12; ++yy)
        for (Int xx = -12; xx <= 12; ++xx)
            CHECK(vert.eval({xx, yy}) + horz.eval({xx, yy}) == c.eval({xx, yy}));

    // order-3 configuration is rejected with exit code 1
    auto bad = run_cli("split2 " + data("config_sturmian_sqrt2.txt") + " 2 --window -8 -8 8 8",
                       true);
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("split annihilator fails") != std::string::npos);
}

TEST_CASE("cli prime-square") {
    auto sq = run_cli("prime-square " + data("cluster_square2.txt"));
    CHECK(sq.exit_code == 0);
    CHECK(sq.has_line("p = 2"));
    CHECK(sq.has_line("conclusion: order <= 2 for every F-tiling"));

    auto sq3 = run_cli("prime-square " + data("cluster_square3.txt"));
    CHECK(sq3.exit_code == 0);
    CHECK(sq3.has_line("p = 3"));
    CHECK(sq3.has_line("conclusion: order <= 2 for every F-tiling"));

    auto skew = run_cli("prime-square " + data("cluster_skew.txt"));
    CHECK(skew.exit_code == 0);
    CHECK(skew.has_line("conclusion: order <= 2 for every F-tiling"));

    auto na = run_cli("prime-square " + data("cluster_one_divisible.txt"));
    CHECK(na.exit_code == 0);
    CHECK(na.out.find("rectangle: not applicable") != std::string::npos);

    auto reject = run_cli("prime-square " + data("cluster_l_tromino.txt"), true);
    CHECK(reject.exit_code == 2);
}

TEST_CASE("cli generate") {
    fs::path f1 = temp_file("gen1.cfg"), f2 = temp_file("gen2.cfg");

    SECTION("sturmian files are byte-identical across runs") {
        auto a = run_cli("generate sturmian --alpha 0 1 2 1 --out " + f1.string());
        auto b = run_cli("generate sturmian --alpha 0 1 2 1 --out " + f2.string());
        CHECK(a.exit_code == 0);
        CHECK(b.exit_code == 0);
        CHECK(slurp(f1) == slurp(f2));
        Configuration c = parse_config(slurp(f1));
        CHECK(c.eval({1, 1}) == Rat(0));
    }
    SECTION("golden ratio parameters are accepted") {
        auto g = run_cli("generate sturmian --alpha 1 1 5 2 --out " + f1.string());
        CHECK(g.exit_code == 0);
        Rat v = parse_config(slurp(f1)).eval({2, 2});
        CHECK((v == Rat(0) || v == Rat(1)));
    }
    SECTION("square discriminant is rejected") {
        auto bad = run_cli("generate sturmian --alpha 0 1 4 1 --out " + f1.string(), true);
        CHECK(bad.exit_code == 2);
    }
    SECTION("random files are reproducible and honor LATCFG_SEED") {
        auto a = run_cli("generate random --seed 7 --out " + f1.string());
        auto b = run_cli("generate random --seed 7 --out " + f2.string());
        CHECK(a.exit_code == 0);
        CHECK(slurp(f1) == slurp(f2));
        CHECK(slurp(f1).find("seed 7") != std::string::npos);

        auto plain = run_cli("generate random --out " + f1.string());
        CHECK(plain.exit_code == 0);
        CHECK(slurp(f1).find("seed 1") != std::string::npos); // built-in default
    }
}

TEST_CASE("cli LATCFG_SEED environment override") {
    fs::path f = temp_file("gen_env.cfg");
    std::string cmd = "LATCFG_SEED=9 " + std::string(LATCFG_BIN) + " generate random --out " +
                      f.string() + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[1024];
    while (std::fread(buf, 1, sizeof buf, pipe) > 0) {}
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(slurp(f).find("seed 9") != std::string::npos);

    // an explicit --seed wins over the environment
    std::string cmd2 = "LATCFG_SEED=9 " + std::string(LATCFG_BIN) + " generate random --seed 4 --out " +
                       f.string() + " 2>/dev/null";
    pipe = popen(cmd2.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fread(buf, 1, sizeof buf, pipe) > 0) {}
    pclose(pipe);
    CHECK(slurp(f).find("seed 4") != std::string::npos);
}

TEST_CASE("cli parse errors exit with code 2 and a line number") {
    fs::path bad = temp_file("bad_cluster.txt");
    std::ofstream(bad) << "0 0\noops\n";
    auto r = run_cli("dirset " + bad.string(), true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("line 2") != std::string::npos);

    auto missing = run_cli("dirset /nonexistent/file.txt", true);
    CHECK(missing.exit_code == 2);

    auto usage = run_cli("frobnicate", true);
    CHECK(usage.exit_code == 2);
}
