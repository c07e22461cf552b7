#include "latcfg/cluster.hpp"
#include "latcfg/config.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace latcfg;

namespace {

const LaurentPoly2 one = LaurentPoly2::constant(Rat(1));

// 0/1 word bit from a quadratic irrational in (0,1)
Int word_bit(const QuadIrrational& a, Int n) { return a.floor_times(n + 1) - a.floor_times(n); }

// c(i,j) = u(i) for even i, v(j) for odd i, with u, v aperiodic words; built
// from two one-periodic components whose explicit lanes cover [-range, range].
Configuration even_odd_config(Int range) {
    QuadIrrational ua{-1, 1, 2, 1}; // sqrt(2) - 1
    QuadIrrational va{-1, 1, 3, 1}; // sqrt(3) - 1

    ExplicitTable t1; // lane over x for the (0,1)-periodic part
    t1.default_value = Rat(0);
    for (Int i = -range; i <= range; ++i)
        if (floor_mod(i, 2) == 0) t1.overrides[i] = Rat(word_bit(ua, i));

    ExplicitTable t2; // lane index 2*y + (x mod 2) for the (2,0)-periodic part
    t2.default_value = Rat(0);
    for (Int j = -range; j <= range; ++j) t2.overrides[2 * j + 1] = Rat(word_bit(va, j));

    return Configuration({OnePeriodicComp({0, 1}, LaneGenerator(std::move(t1))),
                          OnePeriodicComp({2, 0}, LaneGenerator(std::move(t2)))});
}

} // namespace

TEST_CASE("split_order2 on a mixed column/row configuration") {
    Configuration c = even_odd_config(30);
    WindowBounds w{-12, -12, 12, 12};
    SplitResult res = split_order2(c, 2, w);

    CHECK(res.vertical_cosets == std::set<Vec2>{{0, 0}, {0, 1}});
    CHECK(res.horizontal_cosets == std::set<Vec2>{{1, 0}, {1, 1}});
    CHECK(res.ambiguous_cosets.empty());
    CHECK(res.certificate.kind == CertKind::WindowChecked);

    // binary, disjoint, summing to c on the window
    for (Int yy = w.y0; yy <= w.y1; ++yy)
        for (Int xx = w.x0; xx <= w.x1; ++xx) {
            Vec2 p{xx, yy};
            Rat v = res.vertical_component.eval(p);
            Rat h = res.horizontal_component.eval(p);
            CHECK((v == Rat(0) || v == Rat(1)));
            CHECK((h == Rat(0) || h == Rat(1)));
            CHECK_FALSE((v != Rat(0) && h != Rat(0)));
            CHECK(v + h == c.eval(p));
        }

    // claimed periods confirmed by find_periods
    auto vp = find_periods(res.vertical_component, w, 2);
    CHECK(std::find(vp.begin(), vp.end(), Vec2{0, 2}) != vp.end());
    auto hp = find_periods(res.horizontal_component, w, 2);
    CHECK(std::find(hp.begin(), hp.end(), Vec2{2, 0}) != hp.end());

    // each component's period direction lies in dir(supp of the annihilator)
    LaurentPoly2 f = (U({0, 2}) - one) * (U({2, 0}) - one);
    DirectionSet ds = dir(Cluster::from_set(f.support()));
    CHECK(ds.count(direction_of({0, 2})) == 1);
    CHECK(ds.count(direction_of({2, 0})) == 1);
}

TEST_CASE("split_order2 on the all-ones configuration") {
    Configuration c = Configuration::biperiodic(Lattice2::identity(), {{{0, 0}, Rat(1)}});
    WindowBounds w{-6, -6, 6, 6};
    SplitResult res = split_order2(c, 1, w);

    CHECK(res.vertical_cosets == std::set<Vec2>{{0, 0}});
    CHECK(res.horizontal_cosets.empty());
    CHECK(res.ambiguous_cosets == std::set<Vec2>{{0, 0}}); // constant both ways
    CHECK(res.certificate.kind == CertKind::ExactPeriodic);
    for (Int t = -6; t <= 6; ++t) {
        CHECK(res.vertical_component.eval({t, -t}) == Rat(1));
        CHECK(res.horizontal_component.eval({t, -t}) == Rat(0));
    }
}

TEST_CASE("split_order2 on x-parity stripes sends every coset vertical") {
    Configuration c = Configuration::biperiodic(Lattice2::from_vectors({2, 0}, {0, 1}),
                                                {{{0, 0}, Rat(0)}, {{1, 0}, Rat(1)}});
    WindowBounds w{-8, -8, 8, 8};
    SplitResult res = split_order2(c, 2, w);
    CHECK(res.vertical_cosets.size() == 4);
    CHECK(res.horizontal_cosets.empty());
    for (Int yy = w.y0; yy <= w.y1; ++yy)
        for (Int xx = w.x0; xx <= w.x1; ++xx) {
            CHECK(res.vertical_component.eval({xx, yy}) == c.eval({xx, yy}));
            CHECK(res.horizontal_component.eval({xx, yy}) == Rat(0));
        }
}

TEST_CASE("split_order2 error paths") {
    WindowBounds w{-8, -8, 8, 8};
    SECTION("non-binary configuration") {
        Configuration c = Configuration::finite_support({{{0, 0}, Rat(2)}});
        CHECK_THROWS_AS(split_order2(c, 2, w), NotBinaryError);
    }
    SECTION("annihilator precondition fails on the order-3 configuration") {
        Configuration c = sturmian_config({0, 1, 2, 1});
        CHECK_THROWS_AS(split_order2(c, 1, w), NotAnnihilatedError);
        CHECK_THROWS_AS(split_order2(c, 2, w), NotAnnihilatedError);
    }
    SECTION("n must be positive") {
        Configuration c = Configuration::finite_support({{{0, 0}, Rat(1)}});
        CHECK_THROWS_AS(split_order2(c, 0, w), std::invalid_argument);
    }
}
