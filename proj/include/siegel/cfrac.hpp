#pragma once

// Continued fractions of angles: Gauss-map orbits, partial quotients and
// convergents. Rational and quadratic angles are expanded with exact integer
// arithmetic; real angles carry a running error bound and stop as soon as a
// partial quotient is no longer determined by the stored mantissa.

#include "siegel/angle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

inline constexpr int kDefaultDepth = 64;

struct CFExpansion {
    std::vector<mpz_class> partial_quotients;  // a_1, a_2, ...
    std::vector<mp::Real> gauss_orbit;         // theta_0, theta_1, ... (one more than quotients unless terminated)
    std::vector<Angle> exact_orbit;            // same orbit, exact kinds only
    bool terminated = false;                   // rational angle, expansion complete
    bool precision_exhausted = false;          // real angle ran out of mantissa
    long bits = mp::kDefaultBits;
};

struct Convergents {
    std::vector<mpz_class> p;  // p_0 = 0, p_1, ...
    std::vector<mpz_class> q;  // q_0 = 1, q_1 = a_1, ...

    std::size_t size() const { return q.size(); }
};

/// One exact Gauss step x -> (floor(1/x), frac(1/x)) for x in (0,1).
inline std::pair<mpz_class, Angle> gauss_step(const Angle& x) {
    switch (x.kind()) {
        case Angle::Kind::rational: {
            const auto& r = x.as_rational();
            mpz_class a = mp::floor_div(r.q, r.p);
            return {a, Angle::rational(r.q - a * r.p, r.p)};
        }
        case Angle::Kind::quadratic: {
            const auto& z = x.as_quadratic();
            // 1/x = w (u - v sqrt D) / (u^2 - v^2 D)
            Angle inv = Angle::quadratic_squarefree(z.w * z.u, -z.w * z.v, z.D, z.u * z.u - z.v * z.v * z.D);
            mpz_class a = inv.floor();
            return {a, inv.shifted(-a)};
        }
        case Angle::Kind::real:
            break;
    }
    throw Error("gauss_step needs an exact angle");
}

/// Fibonacci numbers with F_0 = 0, F_1 = 1.
inline mpz_class fibonacci(int n) {
    mpz_class f;
    mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(std::max(n, 0)));
    return f;
}

/// Sum of 1/F_n over n >= 1.
inline constexpr double kReciprocalFibonacci = 3.359885666243177553172011302918927179688905133731;

/// Expands frac(theta) to `depth` partial quotients or until it terminates.
inline CFExpansion cf_expand(const Angle& theta, int depth = kDefaultDepth, long bits = mp::kDefaultBits) {
    if (depth < 1) throw Error("cf_expand needs depth >= 1");
    CFExpansion cf;
    cf.bits = bits;
    Angle x = theta.frac();

    if (!x.is_real()) {
        if (x.is_rational() && x.as_rational().p == 0) throw DegenerateAngle();
        for (int n = 0;; ++n) {
            cf.exact_orbit.push_back(x);
            cf.gauss_orbit.push_back(x.value(bits));
            if (n == depth) break;
            auto [a, next] = gauss_step(x);
            cf.partial_quotients.push_back(a);
            if (next.is_rational() && next.as_rational().p == 0) {
                cf.terminated = true;
                break;
            }
            x = std::move(next);
        }
        return cf;
    }

    // Real angle: interval-style bookkeeping on log2 of the absolute error.
    mp::Real v = x.as_real().x;
    const long stored = v.bits();
    if (v.is_zero()) throw DegenerateAngle();
    double log2_err = static_cast<double>(v.exponent() - stored);
    for (int n = 0;; ++n) {
        cf.gauss_orbit.push_back(v);
        if (n == depth) break;
        if (v.is_zero() || v.exponent() < -(stored / 2)) {
            cf.precision_exhausted = true;
            break;
        }
        mp::Real inv = mp::Real(1L, stored) / v;
        // d(1/x) = dx / x^2, plus one rounding of 1/x.
        double lx = static_cast<double>(v.exponent() - 1);
        double prop = log2_err - 2.0 * lx;
        double round = static_cast<double>(inv.exponent() - stored);
        log2_err = std::max(prop, round) + 1.0;
        mp::Real lo = mp::floor(inv - mp::Real(std::ldexp(1.0, static_cast<int>(std::ceil(log2_err))), stored));
        mp::Real hi = mp::floor(inv + mp::Real(std::ldexp(1.0, static_cast<int>(std::ceil(log2_err))), stored));
        if (lo != hi) {
            cf.precision_exhausted = true;
            break;
        }
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), hi.get(), MPFR_RNDN);
        if (a < 1) {
            cf.precision_exhausted = true;
            break;
        }
        cf.partial_quotients.push_back(a);
        v = inv - hi;
    }
    return cf;
}

/// p_n / q_n from the standard three-term recurrences, n = 0 .. number of quotients.
inline Convergents convergents(const CFExpansion& cf) {
    Convergents c;
    mpz_class p_prev = 1, q_prev = 0, p = 0, q = 1;
    c.p.push_back(p);
    c.q.push_back(q);
    for (const auto& a : cf.partial_quotients) {
        mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
        c.p.push_back(p);
        c.q.push_back(q);
    }
    return c;
}

/// Sign of |theta - p/q| - 1/K, exact for rational and quadratic theta (q, K > 0).
inline int compare_distance(const Angle& theta, const mpz_class& p, const mpz_class& q, const mpz_class& K) {
    int s = theta.compare(p, q);
    if (s >= 0) return theta.compare(p * K + q, q * K);
    return -theta.compare(p * K - q, q * K);
}

/// p_n q_{n-1} - p_{n-1} q_n = (-1)^(n-1) for every n, with p_{-1} = 1, q_{-1} = 0.
inline bool determinant_identity_holds(const Convergents& c) {
    mpz_class p_prev = 1, q_prev = 0;
    for (std::size_t n = 0; n < c.size(); ++n) {
        mpz_class det = c.p[n] * q_prev - p_prev * c.q[n];
        mpz_class expected = (n % 2 == 1) ? 1 : -1;
        if (det != expected) return false;
        p_prev = c.p[n];
        q_prev = c.q[n];
    }
    return true;
}

/// 1/(2 q_n q_{n+1}) < |theta - p_n/q_n| < 1/(q_n q_{n+1}); theta already in [0,1).
inline bool approximant_inequality_holds(const Angle& theta, const Convergents& c, std::size_t n) {
    if (n + 1 >= c.size()) throw Error("approximant inequality needs q_{n+1}");
    mpz_class K = c.q[n] * c.q[n + 1];
    bool upper = compare_distance(theta, c.p[n], c.q[n], K) < 0;
    bool lower = compare_distance(theta, c.p[n], c.q[n], 2 * K) > 0;
    return upper && lower;
}

inline bool is_convergent(const Convergents& c, mpz_class p, mpz_class q) {
    mpz_class g = mp::gcd(p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (c.p[n] == p && c.q[n] == q) return true;
    }
    return false;
}

/// Eventually periodic Gauss orbit of a quadratic angle in (0,1):
/// theta_{pre + k + period} = theta_{pre + k}.
struct GaussCycle {
    int preperiod = 0;
    int period = 0;
    std::vector<Angle> orbit;              // theta_0 .. theta_{pre + period - 1}
    std::vector<mpz_class> quotients;      // a_1 .. a_{pre + period}; a_{n+1} = floor(1/theta_n)

    std::size_t index(std::size_t n) const {
        std::size_t pre = static_cast<std::size_t>(preperiod);
        if (n < pre) return n;
        return pre + (n - pre) % static_cast<std::size_t>(period);
    }
    /// a_{n+1}, the quotient produced from theta_n.
    const mpz_class& quotient_after(std::size_t n) const { return quotients[index(n)]; }
};

inline GaussCycle gauss_cycle(const Angle& theta, int max_steps = 100000) {
    Angle x = theta.frac();
    if (!x.is_quadratic()) throw Error("gauss_cycle needs a quadratic angle");
    GaussCycle cyc;
    std::map<std::string, int> seen;
    for (int n = 0; n < max_steps; ++n) {
        std::string key = x.describe();
        auto it = seen.find(key);
        if (it != seen.end()) {
            cyc.preperiod = it->second;
            cyc.period = n - it->second;
            return cyc;
        }
        seen.emplace(std::move(key), n);
        auto [a, next] = gauss_step(x);
        cyc.orbit.push_back(x);
        cyc.quotients.push_back(a);
        x = std::move(next);
    }
    throw PrecisionExhausted(0, "Gauss orbit did not close");
}

/// The purely periodic quadratic angle [0; a_1, ..., a_p, a_1, ...].
inline Angle periodic_angle(const std::vector<long>& period) {
    if (period.empty()) throw Error("empty period");
    mpz_class p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (long a : period) {
        if (a < 1) throw Error("partial quotients must be positive");
        mpz_class pn = a * p + p_prev, qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
    }
    // x = (p + x p_prev) / (q + x q_prev)  =>  q_prev x^2 + (q - p_prev) x - p = 0
    mpz_class b = q - p_prev;
    mpz_class disc = b * b + 4 * p * q_prev;
    return Angle::quadratic(-b, 1, disc, 2 * q_prev);
}

/// [0; pre_1, ..., pre_k, period repeated].
inline Angle eventually_periodic_angle(const std::vector<long>& prefix, const std::vector<long>& period) {
    Angle tail = periodic_angle(period);
    // Fold the prefix from the back: x = 1 / (a + x).
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
        if (*it < 1) throw Error("partial quotients must be positive");
        const auto& z = tail.as_quadratic();
        // a + (u + v sqrt D)/w = (u + a w + v sqrt D)/w, then invert.
        mpz_class u = z.u + *it * z.w, v = z.v, w = z.w;
        tail = Angle::quadratic_squarefree(w * u, -w * v, z.D, u * u - v * v * z.D);
    }
    return tail;
}

}  // namespace siegel
