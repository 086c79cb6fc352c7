#include "siegel/cfrac.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace siegel;

namespace {

std::vector<long> as_longs(const CFExpansion& cf) {
    std::vector<long> out;
    for (const auto& a : cf.partial_quotients) out.push_back(a.get_si());
    return out;
}

}  // namespace

TEST_CASE("rational angles have finite expansions", "[cfrac]") {
    CFExpansion cf = cf_expand(Angle::rational(2, 7));
    CHECK(cf.terminated);
    CHECK(as_longs(cf) == std::vector<long>{3, 2});

    CHECK(as_longs(cf_expand(Angle::rational(355, 113))) == std::vector<long>{7, 16});
    CHECK_THROWS_AS(cf_expand(Angle::rational(0, 1)), DegenerateAngle);
    CHECK_THROWS_AS(cf_expand(Angle::rational(5, 1)), DegenerateAngle);
}

TEST_CASE("golden and silver quotients", "[cfrac]") {
    CFExpansion g = cf_expand(Angle::golden(), 40);
    REQUIRE(g.partial_quotients.size() == 40);
    for (const auto& a : g.partial_quotients) CHECK(a == 1);
    Convergents c = convergents(g);
    for (std::size_t n = 0; n < c.size(); ++n) CHECK(c.q[n] == fibonacci(static_cast<int>(n) + 1));

    CFExpansion s = cf_expand(Angle::parse("silver"), 40);
    for (const auto& a : s.partial_quotients) CHECK(a == 2);
}

TEST_CASE("real angle stops when the mantissa runs out", "[cfrac]") {
    Angle x = Angle::parse("real:0.61803398874989484820458683436563811772030917980576@200", 200);
    CFExpansion cf = cf_expand(x, 500, 200);
    CHECK(cf.precision_exhausted);
    CHECK(cf.partial_quotients.size() > 60);
    CHECK(cf.partial_quotients.size() < 200);
    for (std::size_t i = 0; i < 60; ++i) CHECK(cf.partial_quotients[i] == 1);
}

TEST_CASE("determinant identity, approximant bounds and q_n >= F_n", "[cfrac]") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<long> period(1 + rng() % 6);
        for (auto& a : period) a = 1 + static_cast<long>(rng() % 12);
        Angle t = periodic_angle(period);
        CFExpansion cf = cf_expand(t, 48);
        Convergents c = convergents(cf);
        CHECK(determinant_identity_holds(c));
        for (std::size_t n = 0; n + 1 < c.size(); ++n) {
            CHECK(approximant_inequality_holds(t, c, n));
            CHECK(c.q[n] >= fibonacci(static_cast<int>(n) + 1));
        }
    }
}

TEST_CASE("good approximations are convergents", "[cfrac]") {
    Angle t = periodic_angle({1, 3, 2});
    Convergents c = convergents(cf_expand(t, 40));
    int hits = 0;
    double x = t.to_double();
    for (long q = 1; q <= 3000; ++q) {
        mpz_class qq = q;
        long base = static_cast<long>(std::floor(x * static_cast<double>(q)));
        for (long p = base - 1; p <= base + 2; ++p) {
            if (compare_distance(t, p, qq, 2 * qq * qq) < 0) {
                CHECK(is_convergent(c, p, qq));
                ++hits;
            }
        }
    }
    CHECK(hits > 5);
}

TEST_CASE("gauss cycles and periodic constructors", "[cfrac]") {
    GaussCycle g = gauss_cycle(Angle::golden());
    CHECK(g.preperiod == 0);
    CHECK(g.period == 1);

    Angle t = eventually_periodic_angle({3, 4}, {1, 2});
    GaussCycle c = gauss_cycle(t);
    CHECK(c.preperiod == 2);
    CHECK(c.period == 2);
    CHECK(as_longs(cf_expand(t, 8)) == std::vector<long>{3, 4, 1, 2, 1, 2, 1, 2});

    CHECK(periodic_angle({2}).describe() == Angle::parse("silver").describe());
    CHECK_THROWS(periodic_angle({}));
}

TEST_CASE("angle text round trip", "[cfrac][angle]") {
    for (const char* s : {"2/7", "quad:-1,1,5,2", "quad:3,2,12,7", "golden", "silver", "0.125"}) {
        Angle a = Angle::parse(s);
        Angle b = Angle::parse(a.describe());
        CHECK(a.describe() == b.describe());
    }
    CHECK(Angle::parse("quad:0,1,8,4").describe() == Angle::parse("quad:0,1,2,2").describe());
    CHECK_THROWS_AS(Angle::parse("quad:1,2,x"), ParseError);
    CHECK_THROWS_AS(Angle::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Angle::parse("abc"), ParseError);
}
