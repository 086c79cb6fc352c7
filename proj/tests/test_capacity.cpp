#include "siegel/capacity.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace siegel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("segment and circle capacities", "[capacity]") {
    BoundarySample seg;
    for (int k = 0; k <= 4000; ++k) seg.points.emplace_back(-2.0 + 4.0 * k / 4000.0, 0.0);
    CHECK_THAT(transfinite_diameter(leja_fekete(seg, 400)).transfinite_diameter, WithinRel(1.0, 0.03));

    BoundarySample circ = circle_sample({0.0, 0.0}, 2.0, 4096);
    CHECK_THAT(transfinite_diameter(leja_fekete(circ, 512)).transfinite_diameter, WithinRel(2.0, 0.03));
}

TEST_CASE("conformal radius of an off-centre disk", "[capacity]") {
    // disk |z - c| < 1 seen from 0: conformal radius 1 - |c|^2
    BoundarySample s = circle_sample({0.3, 0.1}, 1.0, 8192);
    CHECK_THAT(capacity_of_boundary(s, 600).conformal_radius, WithinRel(0.9, 0.03));
    CHECK_THROWS_AS(invert_about(circle_sample({1.0, 0.0}, 1.0, 64), {0.0, 0.0}), CenterOnBoundary);
}

TEST_CASE("diameter pair and degenerate samples", "[capacity]") {
    std::vector<cplx> pts{{0, 0}, {1, 0}, {-1, 0}, {0, 0.5}, {1, 0}};
    auto [i, j] = diameter_pair(pts);
    CHECK(i == 1);
    CHECK(j == 2);
    CHECK_THROWS_AS(diameter_pair({{1, 1}, {1, 1}, {1, 1}}), DegenerateSample);

    BoundarySample few;
    few.points = {{0, 0}, {1, 0}, {1, 0}};
    CHECK_THROWS_AS(leja_fekete(few, 3), DegenerateSample);
}

TEST_CASE("critical orbit sampling preconditions", "[capacity]") {
    CHECK_THROWS_AS(siegel_boundary_sample(Angle::rational(1, 3), 1000, 10), BoundedTypeRequired);
    CHECK_THROWS_AS(siegel_boundary_sample(periodic_angle({60}), 1000, 10), BoundedTypeRequired);
    CHECK_THROWS(siegel_boundary_sample(Angle::golden(), 100, 10));
    BoundarySample s = siegel_boundary_sample(Angle::golden(), 2000, 100);
    CHECK(s.points.size() == 2000);
    for (const auto& z : s.points) CHECK(std::abs(z) < 1.0);
}

TEST_CASE("golden Siegel disk conformal radius, small run", "[capacity]") {
    CapacityEstimate c = conformal_radius_capacity(Angle::golden(), 20000, 500, 300);
    // the raw d_n carries an n^(1/(n-1)) bias of about 2% at n = 300
    CHECK_THAT(c.conformal_radius, WithinRel(0.3262, 0.06));
}

TEST_CASE("sample CSV round trip", "[capacity]") {
    BoundarySample s = circle_sample({0.25, -1.0}, 0.5, 33);
    std::stringstream ss;
    write_sample_csv(ss, s);
    BoundarySample r = read_sample_csv(ss);
    REQUIRE(r.points.size() == s.points.size());
    CHECK(hausdorff_distance(r.points, s.points) == 0.0);

    std::istringstream bad("re,im\n0.5,1\n0.5;1\n");
    try {
        read_sample_csv(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}
