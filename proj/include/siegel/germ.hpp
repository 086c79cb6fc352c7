#pragma once

// Germs f(z) = lambda z + a_2 z^2 + ... with lambda = exp(2 pi i theta).
//
// A germ is kept as a recipe: the coefficients are materialized at a given
// mantissa width, and `at(bits, N)` rebuilds them at another width or degree.
// This keeps lambda inside the coefficients consistent with the small
// divisors evaluated from the exact angle.

#include "siegel/angle.hpp"
#include "siegel/scalar.hpp"
#include "siegel/series.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

/// Coefficient width actually used for a requested working width.
inline long germ_bits(long bits) { return std::max<long>(bits, 64); }

/// exp(2 pi i theta), from the reduced residual so large angles lose nothing.
inline MpComplex lambda_of(const Angle& theta, long bits) {
    return MpComplex::cis2pi(theta.centered_residual(mpz_class(1), germ_bits(bits) + 16), germ_bits(bits));
}

/// f = P / Q with P(0) = 0, Q(0) = 1.
struct RationalForm {
    std::vector<MpComplex> P;
    std::vector<MpComplex> Q;

    int degree() const { return static_cast<int>(std::max(P.size(), Q.size())) - 1; }
};

struct GermSeries {
    Angle theta = Angle::rational(0, 1);
    std::string source;
    long bits = 64;
    int degree = 0;                    // polynomial degree; 0 when not a polynomial
    std::vector<MpComplex> coeffs;     // coeffs[k] multiplies z^k; coeffs[0] = 0
    std::optional<RationalForm> rational;
    std::function<GermSeries(long, int)> rebuild;

    bool is_polynomial() const { return degree > 0; }
    int N() const { return static_cast<int>(coeffs.size()) - 1; }

    std::complex<double> coeff(int k) const {
        if (k < 0 || k > N()) return {};
        return coeffs[static_cast<std::size_t>(k)].to_complex();
    }

    /// Same germ with coefficients at `bits` through degree `n` (polynomials keep their degree).
    GermSeries at(long b, int n) const {
        if (rebuild) return rebuild(germ_bits(b), n);
        if (is_polynomial() || (n <= N() && germ_bits(b) <= bits)) return *this;
        throw Error("germ '" + source + "' cannot be re-expanded");
    }

    /// Coefficients a_0..a_n as the working scalar type.
    template <class T>
    Series<T> series(int n, long b) const {
        Series<T> s = zero_series<T>(n, b);
        for (int k = 0; k <= std::min(n, N()); ++k)
            s[static_cast<std::size_t>(k)] = scalar_cast<T>(coeffs[static_cast<std::size_t>(k)], b);
        return s;
    }
};

/// Polynomial germ from a coefficient generator (index = degree).
inline GermSeries make_polynomial_germ(const Angle& theta, std::string source,
                                       std::function<std::vector<MpComplex>(long)> gen, long bits = 64) {
    GermSeries g;
    g.theta = theta;
    g.source = std::move(source);
    g.bits = germ_bits(bits);
    g.coeffs = gen(g.bits);
    while (g.coeffs.size() > 2 && g.coeffs.back().is_zero()) g.coeffs.pop_back();
    g.degree = g.N();
    g.rebuild = [theta, src = g.source, gen](long b, int) { return make_polynomial_germ(theta, src, gen, b); };
    return g;
}

/// Germ given as P/Q; the Taylor coefficients are expanded through degree N.
inline GermSeries make_rational_germ(const Angle& theta, std::string source,
                                     std::function<RationalForm(long)> gen, int N, long bits = 64) {
    GermSeries g;
    g.theta = theta;
    g.source = std::move(source);
    g.bits = germ_bits(bits);
    RationalForm rf = gen(g.bits);
    Series<MpComplex> inv = series_reciprocal(rf.Q, N, g.bits);
    g.coeffs = mul_trunc(rf.P, inv, N, g.bits);
    g.rational = std::move(rf);
    g.rebuild = [theta, src = g.source, gen](long b, int n) { return make_rational_germ(theta, src, gen, n, b); };
    return g;
}

/// Germ known only through its Taylor coefficients through degree N.
inline GermSeries make_series_germ(const Angle& theta, std::string source,
                                   std::function<std::vector<MpComplex>(long, int)> gen, int N, long bits = 64) {
    GermSeries g;
    g.theta = theta;
    g.source = std::move(source);
    g.bits = germ_bits(bits);
    g.coeffs = gen(g.bits, N);
    g.coeffs.resize(static_cast<std::size_t>(N + 1), MpComplex(g.bits));
    g.rebuild = [theta, src = g.source, gen](long b, int n) { return make_series_germ(theta, src, gen, n, b); };
    return g;
}

}  // namespace siegel
