#include "siegel/cfrac.hpp"
#include "siegel/experiments.hpp"
#include "siegel/families.hpp"
#include "siegel/linearize.hpp"
#include "siegel/radius.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace siegel;
using Catch::Matchers::WithinAbs;

namespace {

GermSeries random_polynomial(const Angle& theta, int d, std::uint64_t seed) {
    return make_polynomial_germ(theta, "random", [theta, d, seed](long b) {
        std::mt19937_64 rng(seed);
        auto u = [&rng] { return static_cast<double>(rng() % 2000001) / 1000000.0 - 1.0; };
        std::vector<MpComplex> c(static_cast<std::size_t>(d + 1), MpComplex(b));
        c[1] = lambda_of(theta, b);
        for (int k = 2; k <= d; ++k) c[static_cast<std::size_t>(k)] = MpComplex::make({u(), u()}, b);
        return c;
    });
}

}  // namespace

TEST_CASE("rotation has a trivial linearization", "[linearize]") {
    LinearizationResult L = linearize(rotation_germ(Angle::golden()), 128);
    for (int n = 2; n <= 128; ++n) CHECK(L.b[static_cast<std::size_t>(n)].is_zero());
    CHECK(hadamard_radius(L).infinite);
}

TEST_CASE("first coefficients of the quadratic germ", "[linearize]") {
    // b_2 = 1/(lambda^2 - lambda), b_3 = 2 b_2 / (lambda^3 - lambda)
    Angle t = Angle::golden();
    LinearizationResult L = linearize(quad_germ(t), 8);
    std::complex<double> lam = std::polar(1.0, 2.0 * M_PI * t.to_double());
    std::complex<double> b2 = 1.0 / (lam * lam - lam), b3 = 2.0 * b2 / (lam * lam * lam - lam);
    CHECK(std::abs(L.b[2].to_complex() - b2) < 1e-13);
    CHECK(std::abs(L.b[3].to_complex() - b3) < 1e-13);
    CHECK(L.path == "polynomial");
}

TEST_CASE("resonance at rational angles", "[linearize]") {
    CHECK_THROWS_AS(linearize(quad_germ(Angle::rational(1, 3)), 16), Resonance);
    int at = 0;
    try {
        linearize(quad_germ(Angle::rational(2, 5)), 16);
    } catch (const Resonance& e) {
        at = e.index();
    }
    CHECK(at == 6);
}

TEST_CASE("f o h = h o R against the composition oracle", "[linearize]") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        Angle t = random_quadratic_angles(1, rng())[0];
        int d = 2 + trial % 5;
        GermSeries f = random_polynomial(t, d, rng());
        LinearizationResult L = linearize(f, 128);
        RadiusEstimate R = hadamard_radius(L);
        CHECK(conjugacy_residual(f, L, 128, R.log_value) < 1e-10);
    }
}

TEST_CASE("double-range and multiprecision scalars agree", "[linearize]") {
    GermSeries f = quad_germ(periodic_angle({1, 2}));
    LinearizationResult a = linearize(f, 512, 53);
    LinearizationResult b = linearize(f, 512, 160);
    double worst = 0.0;
    for (int n = 2; n <= 512; ++n) worst = std::max(worst, std::abs(a.log_abs(n) - b.log_abs(n)));
    CHECK(worst < 1e-10);
}

TEST_CASE("rational path reproduces the Mobius coefficients", "[linearize]") {
    LinearizationResult L = linearize(mobius_conjugate(Angle::golden(), 256, 128), 256, 128);
    CHECK(L.path == "rational");
    for (int n = 1; n <= 256; ++n) CHECK(std::abs(L.b[static_cast<std::size_t>(n)].to_complex() - 1.0) < 1e-25);
}

TEST_CASE("radius covariance under rescaling", "[radius]") {
    GermSeries f = quad_germ(Angle::golden());
    RadiusEstimate R = hadamard_radius(linearize(f, 1024));
    for (std::complex<double> a : {std::complex<double>(2.0, 0.0), std::complex<double>(0.3, -0.4)}) {
        RadiusEstimate Ra = hadamard_radius(linearize(rescale(f, a), 1024));
        CHECK_THAT(Ra.log_value, WithinAbs(R.log_value + std::log(std::abs(a)), 1e-9));
    }
    CHECK_THROWS_AS(rescale(f, 0.0), ZeroScale);

    // a f(z/a) for f = lambda z + a z^2 is the quadratic germ itself
    std::complex<double> a(-4.0, 7.5);
    GermSeries g = rescale(perturbed(rotation_germ(Angle::golden()), a), a);
    CHECK(std::abs(g.coeff(1) - f.coeff(1)) < 1e-15);
    CHECK(std::abs(g.coeff(2) - 1.0) < 1e-15);
}

TEST_CASE("radius estimator edge cases", "[radius]") {
    LinearizationResult L = linearize(quad_germ(Angle::golden()), 32);
    CHECK_THROWS_AS(hadamard_radius(L), TooFewCoefficients);
    LinearizationResult L2 = linearize(quad_germ(Angle::golden()), 2048);
    RadiusEstimate R = hadamard_radius(L2);
    CHECK_FALSE(R.infinite);
    CHECK_THAT(R.value, WithinAbs(0.3269, 0.002));
    CHECK(R.uncertainty < 0.05);
    CHECK_THROWS(hadamard_radius(L2, 0.0));
}

TEST_CASE("coefficient dump", "[linearize]") {
    std::ostringstream os;
    write_coefficients_csv(os, linearize(quad_germ(Angle::golden()), 4));
    std::string s = os.str();
    CHECK(s.rfind("n,re,im,log_abs,divisor\n1,1,0,0,0\n", 0) == 0);
}
