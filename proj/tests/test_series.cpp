#include "siegel/scalar.hpp"
#include "siegel/series.hpp"

#include <catch_amalgamated.hpp>

#include <complex>

using namespace siegel;
using C = std::complex<double>;

namespace {

Series<C> geometric(int N) {
    Series<C> s(static_cast<std::size_t>(N + 1), 1.0);
    s[0] = 0.0;
    return s;
}

}  // namespace

TEST_CASE("truncated products", "[series]") {
    Series<C> one_over(9, 1.0);  // 1/(1-z)
    Series<C> sq = mul_trunc(one_over, one_over, 8, 53);
    for (int n = 0; n <= 8; ++n) CHECK(std::abs(sq[static_cast<std::size_t>(n)] - C(n + 1)) < 1e-15);
}

TEST_CASE("reversion of z/(1-z) is z/(1+z)", "[series]") {
    const int N = 30;
    Series<C> inv = series_reversion(geometric(N), N, 53);
    for (int n = 1; n <= N; ++n) CHECK(std::abs(inv[static_cast<std::size_t>(n)] - C(n % 2 ? 1.0 : -1.0)) < 1e-12);
    Series<C> id = compose_oracle(geometric(N), inv, N, 53);
    Series<C> z(static_cast<std::size_t>(N + 1), 0.0);
    z[1] = 1.0;
    CHECK(max_abs_difference(id, z, N) < 1e-12);
}

TEST_CASE("reciprocal", "[series]") {
    Series<C> q{1.0, -1.0};
    Series<C> r = series_reciprocal(q, 12, 53);
    for (int n = 0; n <= 12; ++n) CHECK(std::abs(r[static_cast<std::size_t>(n)] - 1.0) < 1e-15);
    CHECK_THROWS(series_reciprocal(Series<C>{0.0, 1.0}, 4, 53));
}

TEST_CASE("multiprecision reversion", "[series]") {
    const long bits = 192;
    const int N = 24;
    Series<MpComplex> h(static_cast<std::size_t>(N + 1), MpComplex(bits));
    mp::Real f(1L, bits);
    for (int n = 1; n <= N; ++n) {
        f.div_si(n);
        h[static_cast<std::size_t>(n)] = MpComplex(f, mp::Real(0L, bits));
    }
    // reversion of e^z - 1 is log(1 + z): coefficients (-1)^(n-1)/n
    Series<MpComplex> inv = series_reversion(h, N, bits);
    for (int n = 1; n <= N; ++n) {
        double expect = (n % 2 ? 1.0 : -1.0) / n;
        CHECK(std::abs(inv[static_cast<std::size_t>(n)].to_complex() - C(expect)) < 1e-30);
    }
}

TEST_CASE("extended-exponent complex keeps tiny and huge values", "[scalar]") {
    XComplex a(C(1.0, 1.0));
    XComplex big = a;
    for (int i = 0; i < 2000; ++i) big = big * XComplex(C(8.0, 0.0));
    CHECK(std::abs(big.log_abs() - (0.5 * std::log(2.0) + 2000 * std::log(8.0))) < 1e-9);
    XComplex tiny = a;
    for (int i = 0; i < 2000; ++i) tiny = tiny * XComplex(C(0.125, 0.0));
    CHECK(std::abs((big * tiny).to_complex() - C(0.0, 2.0)) < 1e-12);
}
