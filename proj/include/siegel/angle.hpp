#pragma once

// Exact angles with fractional-part semantics.
//
// An Angle is one of
//   rational   p/q in lowest terms, q >= 1
//   quadratic  (u + v sqrt(D)) / w with D squarefree, w > 0, gcd(u, v, w) = 1, v != 0
//   real       an MPFR value carrying its mantissa width
//
// Rational and quadratic angles are closed under the operations used by the
// rest of the library (integer shifts, integer multiples, division by an
// integer) and every comparison on them is exact.

#include "siegel/errors.hpp"
#include "siegel/mp.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace siegel {

/// Integers wider than this are refused by the exact routines.
inline constexpr long kMaxExactBits = 1L << 15;

namespace detail {

inline void check_width(const mpz_class& x, const char* where) {
    long w = mp::bit_width(x);
    if (w > kMaxExactBits) throw PrecisionExhausted(w, where);
}

/// Sign of a + b sqrt(D), D > 0 not a perfect square.
inline int quad_sign(const mpz_class& a, const mpz_class& b, const mpz_class& D) {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    mpz_class lhs = a * a, rhs = b * b * D;
    int c = cmp(lhs, rhs);  // sign of a^2 - b^2 D
    return sa > 0 ? c : -c;
}

/// floor((a + b sqrt(D)) / c) for c > 0.
inline mpz_class quad_floor(const mpz_class& a, const mpz_class& b, const mpz_class& D,
                            const mpz_class& c) {
    mpz_class t;
    if (b >= 0) {
        t = mp::isqrt(b * b * D);
    } else {
        t = -mp::isqrt(b * b * D) - 1;
    }
    return mp::floor_div(a + t, c);
}

/// D = core * root^2 with core squarefree. Trial division up to the cube root
/// of the cofactor; what remains is 1, a prime, a product of two distinct
/// primes, or a prime square, and only the last is a perfect square.
inline std::pair<mpz_class, mpz_class> squarefree_split(const mpz_class& D) {
    static std::mutex mu;
    static std::map<mpz_class, std::pair<mpz_class, mpz_class>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(D);
        if (it != cache.end()) return it->second;
    }
    if (mp::bit_width(D) > 64) throw PrecisionExhausted(64, "squarefree part of a discriminant this large");
    std::uint64_t n = mpz_get_ui(D.get_mpz_t());
    mpz_class core = 1, root = 1;
    for (std::uint64_t k = 2; static_cast<unsigned __int128>(k) * k * k <= n; ++k) {
        int count = 0;
        while (n % k == 0) {
            n /= k;
            ++count;
        }
        for (int i = 0; i < count / 2; ++i) root *= static_cast<unsigned long>(k);
        if (count % 2) core *= static_cast<unsigned long>(k);
    }
    if (n > 1) {
        mpz_class rest = static_cast<unsigned long>(n);
        if (mpz_perfect_square_p(rest.get_mpz_t())) root *= mp::isqrt(rest);
        else core *= rest;
    }
    std::pair<mpz_class, mpz_class> out{core, root};
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(D, out);
    return out;
}

/// (a + b sqrt(D)) / c evaluated without cancellation, c != 0.
inline mp::Real quad_value(const mpz_class& a, const mpz_class& b, const mpz_class& D,
                           const mpz_class& c, long bits) {
    const long work = bits + 32;
    mp::Real root = sqrt(mp::Real(D, work));
    mp::Real r(work);
    if (sgn(a) == 0 || sgn(b) == 0 || sgn(a) == sgn(b)) {
        r = (mp::Real(a, work) + mp::Real(b, work) * root) / mp::Real(c, work);
    } else {
        mpz_class num = a * a - b * b * D;
        r = mp::Real(num, work) /
            (mp::Real(c, work) * (mp::Real(a, work) - mp::Real(b, work) * root));
    }
    return r.with_bits(bits);
}

}  // namespace detail

struct RationalAngle {
    mpz_class p;
    mpz_class q;
};

struct QuadraticAngle {
    mpz_class u, v, D, w;

    friend bool operator==(const QuadraticAngle& a, const QuadraticAngle& b) {
        return a.u == b.u && a.v == b.v && a.D == b.D && a.w == b.w;
    }
};

struct RealAngle {
    mp::Real x;
};

class Angle {
public:
    enum class Kind { rational, quadratic, real };

    Angle() : rep_(RationalAngle{0, 1}) {}

    static Angle rational(mpz_class p, mpz_class q) {
        if (q == 0) throw ParseError("rational angle with zero denominator");
        if (q < 0) {
            p = -p;
            q = -q;
        }
        mpz_class g = mp::gcd(p, q);
        if (g > 1) {
            p /= g;
            q /= g;
        }
        detail::check_width(q, "rational angle");
        return Angle(RationalAngle{std::move(p), std::move(q)});
    }

    /// (u + v sqrt(D)) / w, normalized; collapses to a rational when the root vanishes.
    static Angle quadratic(mpz_class u, mpz_class v, mpz_class D, mpz_class w) {
        if (w == 0) throw ParseError("quadratic angle with zero denominator");
        if (D < 0) throw ParseError("quadratic angle needs D > 0");
        if (w < 0) {
            u = -u;
            v = -v;
            w = -w;
        }
        // Move square factors of D into v.
        if (D > 0) {
            auto [core, root] = detail::squarefree_split(D);
            D = std::move(core);
            v *= root;
        }
        return quadratic_squarefree(std::move(u), std::move(v), std::move(D), std::move(w));
    }

    /// Same as quadratic() for a D already known to be squarefree.
    static Angle quadratic_squarefree(mpz_class u, mpz_class v, mpz_class D, mpz_class w) {
        if (w == 0) throw ParseError("quadratic angle with zero denominator");
        if (w < 0) {
            u = -u;
            v = -v;
            w = -w;
        }
        if (D == 1) return rational(u + v, w);
        if (v == 0 || D == 0) return rational(u, w);
        mpz_class g = mp::gcd(mp::gcd(u, v), w);
        if (g > 1) {
            u /= g;
            v /= g;
            w /= g;
        }
        detail::check_width(u, "quadratic angle");
        detail::check_width(v * v * D, "quadratic angle");
        detail::check_width(w, "quadratic angle");
        return Angle(QuadraticAngle{std::move(u), std::move(v), std::move(D), std::move(w)});
    }

    static Angle real(mp::Real x) { return Angle(RealAngle{std::move(x)}); }

    /// The golden mean (sqrt(5) - 1) / 2.
    static Angle golden() { return quadratic(-1, 1, 5, 2); }

    /// Accepts "p/q", an integer, "quad:u,v,D,w", "golden", "silver" (sqrt 2 - 1),
    /// or a decimal literal (optionally "real:<literal>[@bits]").
    static Angle parse(std::string_view text, long bits = mp::kDefaultBits);

    Kind kind() const { return static_cast<Kind>(rep_.index()); }
    bool is_rational() const { return kind() == Kind::rational; }
    bool is_quadratic() const { return kind() == Kind::quadratic; }
    bool is_real() const { return kind() == Kind::real; }

    const RationalAngle& as_rational() const { return std::get<RationalAngle>(rep_); }
    const QuadraticAngle& as_quadratic() const { return std::get<QuadraticAngle>(rep_); }
    const RealAngle& as_real() const { return std::get<RealAngle>(rep_); }

    /// Mantissa bits stored by a real angle; unbounded (0) for exact kinds.
    long stored_bits() const { return is_real() ? as_real().x.bits() : 0; }

    /// Canonical text that parse() reads back to the same angle.
    std::string describe() const;

    mpz_class floor() const {
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                return mp::floor_div(r.p, r.q);
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                return detail::quad_floor(z.u, z.v, z.D, z.w);
            }
            case Kind::real: {
                mp::Real f = mp::floor(as_real().x);
                mpz_class out;
                mpfr_get_z(out.get_mpz_t(), f.get(), MPFR_RNDN);
                return out;
            }
        }
        return 0;
    }

    /// x - floor(x), same kind.
    Angle frac() const { return shifted(-floor()); }

    /// x + k for an integer k.
    Angle shifted(const mpz_class& k) const {
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                return rational(r.p + k * r.q, r.q);
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                return quadratic_squarefree(z.u + k * z.w, z.v, z.D, z.w);
            }
            case Kind::real: {
                mp::Real x = as_real().x;
                x += mp::Real(k, x.bits());
                return real(std::move(x));
            }
        }
        return *this;
    }

    /// m x without reduction.
    Angle times(const mpz_class& m) const {
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                return rational(r.p * m, r.q);
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                return quadratic_squarefree(z.u * m, z.v * m, z.D, z.w);
            }
            case Kind::real: {
                // Each doubling of m costs one bit of absolute accuracy.
                const mp::Real& x = as_real().x;
                long lost = mp::bit_width(m);
                long keep = x.bits() - lost;
                if (keep < 53) throw PrecisionExhausted(53 + lost, "real angle multiple");
                mp::Real y = x * mp::Real(m, x.bits());
                return real(y.with_bits(keep));
            }
        }
        return *this;
    }

    /// x / m for a positive integer m.
    Angle divided(long m) const {
        if (m <= 0) throw Error("angle division needs a positive integer");
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                return rational(r.p, r.q * m);
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                return quadratic_squarefree(z.u, z.v, z.D, z.w * m);
            }
            case Kind::real: {
                mp::Real x = as_real().x;
                x.div_si(m);
                return real(std::move(x));
            }
        }
        return *this;
    }

    /// Sign of x - p/q (q > 0); exact for rational and quadratic angles.
    int compare(const mpz_class& p, const mpz_class& q) const {
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                return sgn(mpz_class(r.p * q - p * r.q));
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                return detail::quad_sign(z.u * q - p * z.w, z.v * q, z.D);
            }
            case Kind::real: {
                const mp::Real& x = as_real().x;
                long b = x.bits() + mp::bit_width(q) + 8;
                mp::Real d = x.with_bits(b) - mp::Real(p, b) / mp::Real(q, b);
                return d.sign();
            }
        }
        return 0;
    }

    /// Value at the requested mantissa width, relative error below 2^(1-bits).
    mp::Real value(long bits) const {
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                long work = bits + 8;
                return (mp::Real(r.p, work) / mp::Real(r.q, work)).with_bits(bits);
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                return detail::quad_value(z.u, z.v, z.D, z.w, bits);
            }
            case Kind::real:
                return as_real().x.with_bits(bits);
        }
        return mp::Real(bits);
    }

    double to_double() const { return value(64).to_double(); }

    /// n x - round(n x) in [-1/2, 1/2), relative error below 2^(1-bits).
    mp::Real centered_residual(const mpz_class& n, long bits) const {
        switch (kind()) {
            case Kind::rational: {
                const auto& r = as_rational();
                mpz_class rem = mp::floor_mod(mpz_class(n * r.p), r.q);
                if (2 * rem >= r.q) rem -= r.q;
                long work = bits + 8;
                return (mp::Real(rem, work) / mp::Real(r.q, work)).with_bits(bits);
            }
            case Kind::quadratic: {
                const auto& z = as_quadratic();
                mpz_class a = z.u * n, b = z.v * n;
                detail::check_width(b * b * z.D, "angle reduction");
                mpz_class k = detail::quad_floor(2 * a + z.w, 2 * b, z.D, 2 * z.w);
                return detail::quad_value(a - k * z.w, b, z.D, z.w, bits);
            }
            case Kind::real: {
                const mp::Real& x = as_real().x;
                long stored = x.bits();
                long work = stored + mp::bit_width(n) + 8;
                mp::Real y = x.with_bits(work) * mp::Real(n, work);
                mp::Real k = mp::floor(y + mp::Real(0.5, work));
                mp::Real r = y - k;
                if (r.is_zero()) return mp::Real(bits);
                // |error of y| <= n 2^(e_x - stored); need it below |r| 2^(1 - bits).
                long err_exp = mp::bit_width(n) + x.exponent() - stored;
                long need = err_exp - (r.exponent() - 1);
                if (need > 1 - bits) {
                    throw PrecisionExhausted(stored + need + bits - 1, "real angle reduction");
                }
                return r.with_bits(bits);
            }
        }
        return mp::Real(bits);
    }

    /// True when n x is an integer; exact for rational and quadratic kinds.
    bool multiple_is_integer(const mpz_class& n) const {
        switch (kind()) {
            case Kind::rational:
                return (n * as_rational().p) % as_rational().q == 0;
            case Kind::quadratic:
                return n == 0;
            case Kind::real:
                return centered_residual(n, 53).is_zero();
        }
        return false;
    }

private:
    using Rep = std::variant<RationalAngle, QuadraticAngle, RealAngle>;
    explicit Angle(Rep rep) : rep_(std::move(rep)) {}

    Rep rep_;
};

/// frac(x) = x - floor(x), floor convention for negatives.
inline Angle frac(const Angle& x) { return x.frac(); }

/// Exact frac(m x).
inline Angle mul_mod1(const Angle& x, const mpz_class& m) {
    if (m <= 0) throw Error("mul_mod1 needs a positive multiplier");
    return x.times(m).frac();
}

/// frac(n x) at the requested width; computed from the exact representation.
inline mp::Real angle_reduce(const Angle& x, const mpz_class& n, long bits) {
    if (bits < 53) throw Error("angle_reduce needs at least 53 bits");
    mp::Real r = x.centered_residual(n, bits);
    if (r.sign() < 0) r += mp::Real(1L, bits);
    return r;
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline mpz_class parse_int(const std::string& s, std::string_view context) {
    mpz_class z;
    std::string t = s;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || z.set_str(t, 10) != 0) {
        throw ParseError("malformed integer '" + s + "' in angle '" + std::string(context) + "'");
    }
    return z;
}

}  // namespace detail

inline Angle Angle::parse(std::string_view text, long bits) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty angle");
    if (s == "golden") return golden();
    if (s == "silver") return quadratic(-1, 1, 2, 1);
    if (s.rfind("quad:", 0) == 0) {
        auto parts = detail::split(std::string_view(s).substr(5), ',');
        if (parts.size() != 4) throw ParseError("quadratic angle needs quad:u,v,D,w, got '" + s + "'");
        mpz_class u = detail::parse_int(parts[0], s), v = detail::parse_int(parts[1], s),
                  D = detail::parse_int(parts[2], s), w = detail::parse_int(parts[3], s);
        if (D <= 0) throw ParseError("quadratic angle needs D > 0 in '" + s + "'");
        return quadratic(u, v, D, w);
    }
    if (s.rfind("real:", 0) == 0) {
        std::string body = s.substr(5);
        auto at = body.find('@');
        if (at != std::string::npos) {
            std::string b = body.substr(at + 1);
            body = body.substr(0, at);
            bits = static_cast<long>(detail::parse_int(b, s).get_si());
            if (bits < 53) throw ParseError("real angle needs at least 53 bits in '" + s + "'");
        }
        mp::Real x(bits);
        if (!mp::Real::parse(body, bits, x)) throw ParseError("malformed real angle '" + s + "'");
        return real(std::move(x));
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        return rational(detail::parse_int(s.substr(0, slash), s),
                        detail::parse_int(s.substr(slash + 1), s));
    }
    if (s.find_first_of(".eE") == std::string::npos) {
        return rational(detail::parse_int(s, s), 1);
    }
    mp::Real x(bits);
    if (!mp::Real::parse(s, bits, x)) throw ParseError("malformed angle '" + s + "'");
    return real(std::move(x));
}

inline std::string Angle::describe() const {
    switch (kind()) {
        case Kind::rational: {
            const auto& r = as_rational();
            return r.p.get_str() + "/" + r.q.get_str();
        }
        case Kind::quadratic: {
            const auto& z = as_quadratic();
            return "quad:" + z.u.get_str() + "," + z.v.get_str() + "," + z.D.get_str() + "," +
                   z.w.get_str();
        }
        case Kind::real: {
            const mp::Real& x = as_real().x;
            int digits = static_cast<int>(static_cast<double>(x.bits()) * 0.30103) + 2;
            std::string body = x.to_string(digits);
            return "real:" + body + "@" + std::to_string(x.bits());
        }
    }
    return {};
}

}  // namespace siegel
