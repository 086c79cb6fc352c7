#pragma once

// Formal linearization h(Z) = Z + sum b_n Z^n of f(z) = lambda z + ...,
// f o h = h o R_theta. Comparing Z^n coefficients,
//
//   (lambda^n - lambda) b_n = sum_{k>=2} a_k [Z^n] h^k,
//
// and [Z^n] h^k only involves b_1..b_{n-1}. The divisor is evaluated as
// lambda (exp(2 pi i phi) - 1) = lambda 2i sin(pi phi) exp(i pi phi) with
// phi the centered residual of (n-1) theta, never as a difference of powers.
//
// Three recurrences:
//   polynomial  powers h^2..h^d kept incrementally, O(d N^2)
//   rational    f = P/Q:  P(h) = Q(h) (h o R), powers up to max(deg P, deg Q), O((p+q) N^2)
//   series      all powers up to N, O(N^3)

#include "siegel/angle.hpp"
#include "siegel/errors.hpp"
#include "siegel/germ.hpp"
#include "siegel/scalar.hpp"
#include "siegel/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace siegel {

inline constexpr int kDefaultPolynomialN = 4096;
inline constexpr int kDefaultSeriesN = 1024;

struct LinearizationResult {
    Angle theta = Angle::rational(0, 1);
    long bits = 53;
    int N = 0;
    int valid = 0;                      // b_1..b_valid computed
    std::string path;
    std::vector<XComplex> b;            // b[0] = 0, b[1] = 1
    std::vector<double> divisors;       // divisors[n] = |lambda^n - lambda|, n >= 2
    std::vector<unsigned char> overflow;

    double log_abs(int n) const { return b[static_cast<std::size_t>(n)].log_abs(); }
    bool any_overflow() const { return valid < N; }
};

namespace detail {

template <class T>
T zero_of(long bits) {
    return scalar_from<T>({0.0, 0.0}, bits);
}

template <class T>
struct Divisors {
    std::vector<T> value;        // lambda^n - lambda
    std::vector<double> modulus;
};

template <class T>
Divisors<T> small_divisors(const Angle& theta, const T& lambda, int N, long bits) {
    Divisors<T> d;
    d.value.assign(static_cast<std::size_t>(N + 1), zero_of<T>(bits));
    d.modulus.assign(static_cast<std::size_t>(N + 1), 0.0);
    long work = germ_bits(bits) + 16;
    for (int n = 2; n <= N; ++n) {
        mp::Real phi = theta.centered_residual(mpz_class(n - 1), work);
        if (phi.is_zero()) throw Resonance(n);
        T e;
        if constexpr (std::is_same_v<T, MpComplex>) {
            e = MpComplex::expm1_i2pi(phi, bits);
        } else {
            e = XComplex::expm1_i2pi(phi, bits);
        }
        d.modulus[static_cast<std::size_t>(n)] = std::exp(log_abs(e));
        d.value[static_cast<std::size_t>(n)] = lambda * e;
    }
    return d;
}

template <class T>
LinearizationResult finish(const GermSeries& f, int N, long bits, const std::string& path,
                           const std::vector<T>& b, int valid, const std::vector<double>& divisors) {
    LinearizationResult L;
    L.theta = f.theta;
    L.bits = bits;
    L.N = N;
    L.valid = valid;
    L.path = path;
    L.b.assign(static_cast<std::size_t>(N + 1), XComplex());
    for (int n = 1; n <= valid; ++n) L.b[static_cast<std::size_t>(n)] = to_x(b[static_cast<std::size_t>(n)]);
    L.divisors = divisors;
    L.overflow.assign(static_cast<std::size_t>(N + 1), 0);
    for (int n = valid + 1; n <= N; ++n) L.overflow[static_cast<std::size_t>(n)] = 1;
    return L;
}

template <class T>
bool finite(const T& x) {
    return x.is_finite();
}

/// Polynomial and general-series recurrences; `kmax(n)` bounds the powers needed at step n.
template <class T>
LinearizationResult linearize_powers(const GermSeries& f, int N, long bits, bool polynomial) {
    T lambda = scalar_cast<T>(lambda_of(f.theta, bits), bits);
    Divisors<T> dv = small_divisors<T>(f.theta, lambda, N, bits);
    int top = polynomial ? std::min(f.degree, N) : N;
    std::vector<T> a(static_cast<std::size_t>(top + 1), zero_of<T>(bits));
    for (int k = 2; k <= top && k <= f.N(); ++k)
        a[static_cast<std::size_t>(k)] = scalar_cast<T>(f.coeffs[static_cast<std::size_t>(k)], bits);

    // P[k][n] = [Z^n] h^k; P[1] is b itself.
    std::vector<std::vector<T>> P(static_cast<std::size_t>(top + 1));
    for (int k = 1; k <= top; ++k) P[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(N + 1), zero_of<T>(bits));
    std::vector<T>& b = P[1];
    b[1] = scalar_from<T>({1.0, 0.0}, bits);
    int valid = 1;
    for (int n = 2; n <= N; ++n) {
        auto un = static_cast<std::size_t>(n);
        T K = zero_of<T>(bits);
        int kmax = std::min(top, n);
        for (int k = 2; k <= kmax; ++k) {
            auto uk = static_cast<std::size_t>(k);
            std::size_t count = static_cast<std::size_t>(n - k + 1);
            P[uk][un] = dot_reverse(&b[1], &P[uk - 1][uk - 1], count);
            if (!a[uk].is_zero()) K += a[uk] * P[uk][un];
        }
        b[un] = K / dv.value[un];
        if (!finite(b[un])) break;
        valid = n;
    }
    return finish<T>(f, N, bits, polynomial ? "polynomial" : "series", b, valid, dv.modulus);
}

template <class T>
LinearizationResult linearize_rational(const GermSeries& f, int N, long bits) {
    const RationalForm& rf = *f.rational;
    T lambda = scalar_cast<T>(lambda_of(f.theta, bits), bits);
    Divisors<T> dv = small_divisors<T>(f.theta, lambda, N, bits);
    int top = std::max<int>(1, rf.degree());
    std::vector<T> p(static_cast<std::size_t>(top + 1), zero_of<T>(bits)), q = p;
    for (std::size_t k = 0; k < rf.P.size(); ++k) p[k] = scalar_cast<T>(rf.P[k], bits);
    for (std::size_t k = 0; k < rf.Q.size(); ++k) q[k] = scalar_cast<T>(rf.Q[k], bits);
    if (std::abs(to_complex(p[1]) - to_complex(lambda)) > 1e-9) throw Error("rational germ: P'(0) differs from lambda");

    std::vector<std::vector<T>> P(static_cast<std::size_t>(top + 1));
    for (int k = 1; k <= top; ++k) P[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(N + 1), zero_of<T>(bits));
    std::vector<T>& b = P[1];
    std::vector<T> C(static_cast<std::size_t>(N + 1), zero_of<T>(bits));  // [Z^m] Q(h) for m >= 1
    std::vector<T> F(static_cast<std::size_t>(N + 1), zero_of<T>(bits));  // lambda^m b_m

    auto close_step = [&](std::size_t m) {
        T c = zero_of<T>(bits);
        for (int k = 1; k <= top; ++k) {
            auto uk = static_cast<std::size_t>(k);
            if (!q[uk].is_zero()) c += q[uk] * P[uk][m];
        }
        C[m] = c;
    };

    b[1] = scalar_from<T>({1.0, 0.0}, bits);
    F[1] = lambda;
    close_step(1);
    int valid = 1;
    for (int n = 2; n <= N; ++n) {
        auto un = static_cast<std::size_t>(n);
        T K = zero_of<T>(bits);
        for (int k = 2; k <= std::min(top, n); ++k) {
            auto uk = static_cast<std::size_t>(k);
            P[uk][un] = dot_reverse(&b[1], &P[uk - 1][uk - 1], static_cast<std::size_t>(n - k + 1));
            if (!p[uk].is_zero()) K += p[uk] * P[uk][un];
        }
        K -= dot_reverse(&C[1], &F[1], static_cast<std::size_t>(n - 1));
        b[un] = K / dv.value[un];
        if (!finite(b[un])) break;
        F[un] = (dv.value[un] + lambda) * b[un];
        close_step(un);
        valid = n;
    }
    return finish<T>(f, N, bits, "rational", b, valid, dv.modulus);
}

}  // namespace detail

/// Coefficients b_1..b_N of the linearizing series, computed at `bits` (XComplex up to 53).
inline LinearizationResult linearize(const GermSeries& f, int N, long bits = 53) {
    if (N < 1) throw Error("linearize needs N >= 1");
    GermSeries g = f.at(bits, N);
    return dispatch_scalar(bits, [&](auto tag) {
        using T = typename decltype(tag)::type;
        if (g.is_polynomial()) return detail::linearize_powers<T>(g, N, bits, true);
        if (g.rational) return detail::linearize_rational<T>(g, N, bits);
        if (g.N() < N) throw Error("linearize: truncated germ has fewer than N coefficients");
        return detail::linearize_powers<T>(g, N, bits, false);
    });
}

/// max |[z^k] (f o h - h o R_theta)| / max |[z^k] h o R_theta|, k <= n, in double.
/// Both sides are taken after z -> e^log_scale z so the coefficients stay in range;
/// choose log_scale near log R.
inline double conjugacy_residual(const GermSeries& f, const LinearizationResult& L, int n, double log_scale) {
    using C = std::complex<double>;
    n = std::min(n, L.valid);
    Series<C> h(static_cast<std::size_t>(n + 1)), hr(h.size()), fs(h.size());
    C lam = f.coeff(1), lam_k = 1.0;
    for (int k = 1; k <= n; ++k) {
        const XComplex& b = L.b[static_cast<std::size_t>(k)];
        lam_k *= lam;
        if (b.is_zero()) continue;
        double e = static_cast<double>(b.exponent()) * std::log(2.0) + (k - 1) * log_scale;
        h[static_cast<std::size_t>(k)] = b.mantissa() * std::exp(e);
        hr[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k)] * lam_k;
    }
    for (int k = 1; k <= std::min(n, f.N()); ++k) fs[static_cast<std::size_t>(k)] = f.coeff(k) * std::exp((k - 1) * log_scale);
    Series<C> lhs = compose_oracle(fs, h, n, 53);
    double scale = 0.0;
    for (const C& c : hr) scale = std::max(scale, std::abs(c));
    return max_abs_difference(lhs, hr, n) / scale;
}

namespace detail {

inline void put_number(std::ostream& os, double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    os.write(buf, r.ptr - buf);
}

/// m 2^e in decimal scientific notation, valid far outside the double range.
inline void put_scaled(std::ostream& os, double m, std::int64_t e) {
    if (m == 0.0) {
        os << '0';
        return;
    }
    if (e > -1000 && e < 1000) {
        put_number(os, std::ldexp(m, static_cast<int>(e)));
        return;
    }
    double l = std::log10(std::abs(m)) + static_cast<double>(e) * std::log10(2.0);
    double k = std::floor(l);
    double d = std::copysign(std::pow(10.0, l - k), m);
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed, 15);
    os.write(buf, r.ptr - buf);
    os << 'e' << static_cast<long long>(k);
}

}  // namespace detail

/// CSV rows n,re,im,log_abs,divisor.
inline void write_coefficients_csv(std::ostream& os, const LinearizationResult& L) {
    os << "n,re,im,log_abs,divisor\n";
    for (int n = 1; n <= L.valid; ++n) {
        const XComplex& x = L.b[static_cast<std::size_t>(n)];
        os << n << ',';
        detail::put_scaled(os, x.mantissa().real(), x.exponent());
        os << ',';
        detail::put_scaled(os, x.mantissa().imag(), x.exponent());
        os << ',';
        if (x.is_zero()) os << "-inf";
        else detail::put_number(os, x.log_abs());
        os << ',';
        detail::put_number(os, n >= 2 ? L.divisors[static_cast<std::size_t>(n)] : 0.0);
        os << '\n';
    }
}

}  // namespace siegel
