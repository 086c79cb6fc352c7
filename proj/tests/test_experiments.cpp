#include "siegel/experiments.hpp"

#include <catch_amalgamated.hpp>

using namespace siegel;
using Catch::Matchers::WithinAbs;

TEST_CASE("angle samplers are seeded", "[experiments]") {
    auto a = random_quadratic_angles(20, 9), b = random_quadratic_angles(20, 9), c = random_quadratic_angles(20, 10);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].describe() == b[i].describe());
        CHECK(a[i].is_quadratic());
        differs |= a[i].describe() != c[i].describe();
    }
    CHECK(differs);
    for (const Angle& t : a)
        for (const auto& q : cf_expand(t, 24).partial_quotients) CHECK((q >= 1 && q <= 12));
}

TEST_CASE("small conjecture scan", "[experiments]") {
    ScanReport rep = conjecture_scan(random_quadratic_angles(6, 1), 1024);
    CHECK(rep.rows.size() == 6);
    CHECK(rep.flagged() == 0);
    for (const auto& r : rep.rows) {
        CHECK(std::isfinite(r.S));
        CHECK(std::abs(r.S) < 3.0);
    }
    CHECK(rep.summary.at("band_S") >= 0.0);

    ScanReport rat = conjecture_scan({Angle::rational(1, 5)}, 1024);
    CHECK(rat.rows[0].flagged);
}

TEST_CASE("trivial family is exactly harmonic", "[experiments]") {
    HarmonicReport h = harmonicity_check(rotation_germ(Angle::golden()), {11.0, 15.0}, 16, 256);
    CHECK(h.max_abs_delta() < 1e-9);
    CHECK_THROWS(harmonicity_check(rotation_germ(Angle::golden()), {5.0}, 16, 256));
    CHECK_THROWS(circle_average(rotation_germ(Angle::golden()), 11.0, 8, 256));
}

TEST_CASE("fatou check whitelist", "[experiments]") {
    FatouReport f = fatou_check(rotation_germ(Angle::golden()), 11.0, 16, 256);
    CHECK(f.holds);
    CHECK(std::isinf(f.slack));
    CHECK_THROWS(fatou_check(quad_germ(Angle::golden()), 11.0, 16, 256));
}

TEST_CASE("lemma scan", "[experiments]") {
    ScanReport rep = lemma_scan({Angle::golden(), periodic_angle({3, 1})}, {1, 2, 3, 8});
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        if (rep.column(i, "m") == 1.0) CHECK_THAT(rep.column(i, "gap"), WithinAbs(0.0, 1e-12));
    CHECK(rep.summary.at("violations") == 0.0);
    CHECK(rep.summary.at("fitted_C") > 0.0);
}

TEST_CASE("dstar scan", "[experiments]") {
    CHECK_THROWS(dstar_bounds_scan(2, {Angle::golden()}, 512));
    ScanReport rep = dstar_bounds_scan(3, {Angle::golden(), periodic_angle({2, 3})}, 1024);
    CHECK(rep.flagged() == 0);
    CHECK(rep.summary.at("max_abs_geyer_gap") < 0.05);
}
