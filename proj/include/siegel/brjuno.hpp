#pragma once

// Yoccoz's Brjuno function Y and the Brjuno sum B with truncation tails.
//
//   Y(theta) = sum_{n>=0} beta_{n-1} log(1/theta_n),  beta_{-1} = 1,
//   beta_n = theta_0 ... theta_n,
//   B(theta) = sum_{n>=0} log(q_{n+1}) / q_n.
//
// Tails: with A an upper bound for every partial quotient past the cut,
// 1/theta_n < A + 1 and the products of k consecutive Gauss iterates are
// below 1/F_{k+1}, so
//   Y - Y_N <= beta_{N-1} * psi * log(A + 1),
// psi the reciprocal Fibonacci constant. For B, q_{N+j} >= F_{j+1} q_N and
// log q_{n+1} <= log q_n + log(A + 1) give
//   B - B_N <= sum_j m(F_{j+1} q_N) + log(A + 1) psi / q_N,
// m the monotone majorant of log x / x. For quadratic angles A is a proven
// bound (discriminant of the reduced tail, or the periodic cycle); for
// real-kind angles it is the largest quotient seen, and the result is marked
// uncertified.

#include "siegel/cfrac.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace siegel {

struct BrjunoValue {
    double value = 0.0;
    double tail_bound = 0.0;
    int depth_used = 0;
    bool infinite = false;     // rational angle
    bool undecidable = false;  // real angle whose mantissa ran out before depth
    bool certified = true;     // tail bound is rigorous (exact quotient cap known)
    double quotient_cap = 0.0; // A used in the tail

    double upper() const { return value + tail_bound; }
};

namespace detail {

/// Upper bound for every partial quotient produced from x onwards.
///
/// Once 1/x is reduced (x' < -1 for the conjugate) every later 1/theta_n is
/// reduced too, and a reduced root of a primitive a X^2 + b X + c is below
/// sqrt(b^2 - 4ac). Otherwise fall back to the exact periodic cycle.
inline double quadratic_quotient_cap(const Angle& x, const mpz_class& first) {
    const auto& z = x.as_quadratic();
    // conjugate (u - v sqrt D) / w < -1  <=>  u + w - v sqrt D < 0
    if (quad_sign(z.u + z.w, -z.v, z.D) < 0) {
        // w^2 X^2 - 2uw X + (u^2 - v^2 D), made primitive
        mpz_class A = z.w * z.w, B = -2 * z.u * z.w, C = z.u * z.u - z.v * z.v * z.D;
        mpz_class g = mp::gcd(mp::gcd(A, B), C);
        mpz_class disc = (B * B - 4 * A * C) / (g * g);
        mpz_class cap = mp::isqrt(disc);
        return std::max(cap, mpz_class(first)).get_d();
    }
    GaussCycle cyc = gauss_cycle(x);
    mpz_class cap = 0;
    for (const auto& a : cyc.quotients) cap = std::max(cap, a);
    return cap.get_d();
}

/// Orbit values theta_0 .. theta_{depth} (double) and the quotient cap for the tail.
struct OrbitData {
    std::vector<double> theta;
    std::vector<mpz_class> quotients;  // a_{n+1} = floor(1 / theta_n)
    double cap = 0.0;
    bool certified = true;
    bool exhausted = false;
};

inline OrbitData orbit_data(const Angle& x, int depth, long bits) {
    OrbitData od;
    if (x.is_quadratic()) {
        Angle t = x;
        for (int n = 0; n <= depth; ++n) {
            od.theta.push_back(t.value(64).to_double());
            auto [a, next] = gauss_step(t);
            od.quotients.push_back(a);
            if (n < depth) t = std::move(next);
        }
        od.cap = quadratic_quotient_cap(t, od.quotients.back());
        return od;
    }
    CFExpansion cf = cf_expand(x, depth + 1, bits);
    for (const auto& t : cf.gauss_orbit) od.theta.push_back(t.to_double());
    od.quotients = cf.partial_quotients;
    od.exhausted = cf.precision_exhausted;
    od.certified = false;
    mpz_class cap = 1;
    for (const auto& a : cf.partial_quotients) cap = std::max(cap, a);
    od.cap = cap.get_d();
    return od;
}

/// Sum over j >= 0 of the monotone majorant of log x / x at F_{j+1} x0.
inline double log_over_x_tail(double log_x0) {
    double sum = 0.0;
    double f_prev = 0.0, f = 1.0;  // F_0, F_1
    for (int j = 0; j < 400; ++j) {
        double lx = log_x0 + std::log(f);
        sum += lx >= 1.0 ? lx * std::exp(-lx) : std::exp(-1.0);
        double next = f + f_prev;
        f_prev = f;
        f = next;
        if (lx > 700.0) break;
    }
    return sum * (1.0 + 1e-12) + 1e-300;
}

}  // namespace detail

inline BrjunoValue infinite_brjuno() {
    BrjunoValue v;
    v.value = std::numeric_limits<double>::infinity();
    v.infinite = true;
    return v;
}

/// Partial sum of Y over n < depth with a tail bound.
inline BrjunoValue yoccoz_Y(const Angle& theta, int depth = kDefaultDepth, long bits = mp::kDefaultBits) {
    if (depth < 1) throw Error("yoccoz_Y needs depth >= 1");
    Angle x = theta.frac();
    if (x.is_rational()) return infinite_brjuno();

    detail::OrbitData od = detail::orbit_data(x, depth, bits);
    BrjunoValue out;
    out.certified = od.certified;
    out.quotient_cap = od.cap;
    double beta = 1.0, sum = 0.0;
    int n = 0;
    int usable = static_cast<int>(od.theta.size());
    for (; n < depth && n < usable; ++n) {
        double t = od.theta[static_cast<std::size_t>(n)];
        if (!(t > 0.0)) break;
        sum += beta * -std::log(t);
        beta *= t;
    }
    out.value = sum;
    out.depth_used = n;
    out.tail_bound = beta * kReciprocalFibonacci * std::log(od.cap + 1.0);
    if (n < depth && od.exhausted) {
        out.undecidable = true;
        out.certified = false;
    }
    return out;
}

/// Exact resummation for quadratic angles through the eventually periodic orbit.
inline double yoccoz_Y_closed_form(const Angle& theta, long bits = 128) {
    Angle x = theta.frac();
    if (!x.is_quadratic()) throw Error("closed form needs a quadratic angle");
    GaussCycle cyc = gauss_cycle(x);
    std::vector<mp::Real> t;
    for (const auto& a : cyc.orbit) t.push_back(a.value(bits));
    mp::Real beta(1L, bits), pre_sum(0L, bits);
    for (int n = 0; n < cyc.preperiod; ++n) {
        pre_sum += beta * mp::log(mp::Real(1L, bits) / t[static_cast<std::size_t>(n)]);
        beta *= t[static_cast<std::size_t>(n)];
    }
    mp::Real s(0L, bits), prod(1L, bits);
    for (int k = 0; k < cyc.period; ++k) {
        const mp::Real& tk = t[static_cast<std::size_t>(cyc.preperiod + k)];
        s += prod * mp::log(mp::Real(1L, bits) / tk);
        prod *= tk;
    }
    mp::Real y = pre_sum + beta * s / (mp::Real(1L, bits) - prod);
    return y.to_double();
}

/// Partial sum of log(q_{n+1}) / q_n over n < depth with a tail bound.
inline BrjunoValue brjuno_B(const Angle& theta, int depth = kDefaultDepth, long bits = mp::kDefaultBits) {
    if (depth < 1) throw Error("brjuno_B needs depth >= 1");
    Angle x = theta.frac();
    if (x.is_rational()) return infinite_brjuno();

    detail::OrbitData od = detail::orbit_data(x, depth, bits);
    BrjunoValue out;
    out.certified = od.certified;
    out.quotient_cap = od.cap;

    mpz_class q_prev = 0, q = 1;
    double sum = 0.0;
    int n = 0;
    int avail = static_cast<int>(od.quotients.size());
    for (; n < depth && n < avail; ++n) {
        mpz_class qn = od.quotients[static_cast<std::size_t>(n)] * q + q_prev;
        sum += mp::log_of(qn) * std::exp(-mp::log_of(q));
        q_prev = std::move(q);
        q = std::move(qn);
    }
    out.value = sum;
    out.depth_used = n;
    double log_q = mp::log_of(q);
    out.tail_bound = detail::log_over_x_tail(log_q) + std::log(od.cap + 1.0) * kReciprocalFibonacci * std::exp(-log_q);
    if (n < depth && od.exhausted) {
        out.undecidable = true;
        out.certified = false;
    }
    return out;
}

/// Y(theta) - Y(m theta); the caller compares against C log m.
inline double lemma_gap(const Angle& theta, long m, int depth = kDefaultDepth, long bits = mp::kDefaultBits) {
    if (m < 1) throw Error("lemma_gap needs m >= 1");
    BrjunoValue a = yoccoz_Y(theta, depth, bits);
    BrjunoValue b = yoccoz_Y(mul_mod1(theta, mpz_class(m)), depth, bits);
    if (a.infinite || b.infinite) throw Error("lemma_gap needs an irrational angle");
    return a.value - b.value;
}

}  // namespace siegel
