#pragma once

// Thin RAII layer over MPFR with a runtime mantissa width.
//
// Binary operations produce a result whose precision is the larger of the
// operand precisions. All rounding is to nearest.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace siegel::mp {

inline constexpr long kDefaultBits = 256;

class Real {
public:
    explicit Real(long bits = kDefaultBits) {
        mpfr_init2(v_, std::max<long>(bits, MPFR_PREC_MIN));
        mpfr_set_zero(v_, 1);
    }
    Real(double x, long bits) : Real(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(long x, long bits) : Real(bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(const mpz_class& x, long bits) : Real(bits) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }

    Real(const Real& o) : Real(o.bits()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            if (bits() != o.bits()) mpfr_set_prec(v_, o.bits());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    /// Parses a decimal literal; returns false when the text is not a number.
    static bool parse(const std::string& text, long bits, Real& out) {
        out = Real(bits);
        char* end = nullptr;
        int rc = mpfr_strtofr(out.v_, text.c_str(), &end, 10, MPFR_RNDN);
        (void)rc;
        return end != nullptr && end != text.c_str() && *end == '\0';
    }

    long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Returns mantissa m with 0.5 <= |m| < 1 and sets exp so that value = m 2^exp.
    double frexp(long& exp) const { return mpfr_get_d_2exp(&exp, v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Base-2 exponent e such that 2^(e-1) <= |x| < 2^e; very negative for zero.
    long exponent() const { return is_zero() ? -(1L << 40) : static_cast<long>(mpfr_get_exp(v_)); }

    std::string to_string(int digits = 20) const {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

    Real& operator+=(const Real& o) { return apply2(o, mpfr_add); }
    Real& operator-=(const Real& o) { return apply2(o, mpfr_sub); }
    Real& operator*=(const Real& o) { return apply2(o, mpfr_mul); }
    Real& operator/=(const Real& o) { return apply2(o, mpfr_div); }

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator-(Real a) {
        mpfr_neg(a.v_, a.v_, MPFR_RNDN);
        return a;
    }

    Real& mul_si(long k) {
        mpfr_mul_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }
    Real& div_si(long k) {
        mpfr_div_si(v_, v_, k, MPFR_RNDN);
        return *this;
    }

    friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return compare(a, b) == 0; }

    friend Real abs(Real a) {
        mpfr_abs(a.v_, a.v_, MPFR_RNDN);
        return a;
    }
    friend Real sqrt(Real a) { return a.apply1(mpfr_sqrt); }
    friend Real log(Real a) { return a.apply1(mpfr_log); }
    friend Real exp(Real a) { return a.apply1(mpfr_exp); }
    friend Real sin(Real a) { return a.apply1(mpfr_sin); }
    friend Real cos(Real a) { return a.apply1(mpfr_cos); }
    friend Real floor(Real a) {
        mpfr_floor(a.v_, a.v_);
        return a;
    }
    friend Real pow(Real a, const Real& b) { return a.apply2(b, mpfr_pow); }

    /// sin(pi x) and cos(pi x) computed together.
    friend std::pair<Real, Real> sin_cos_pi(const Real& x) {
        Real t = pi(x.bits()) * x;
        Real s(x.bits()), c(x.bits());
        mpfr_sin_cos(s.v_, c.v_, t.v_, MPFR_RNDN);
        return {std::move(s), std::move(c)};
    }

    static Real pi(long bits) {
        Real r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    /// Same value rounded to a different mantissa width.
    Real with_bits(long bits) const {
        Real r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

private:
    using Op1 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    using Op2 = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

    Real& apply1(Op1 op) {
        op(v_, v_, MPFR_RNDN);
        return *this;
    }
    Real& apply2(const Real& o, Op2 op) {
        if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
        op(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    mpfr_t v_;
};

// Namespace-scope declarations so that qualified calls (mp::floor, ...) resolve.
Real abs(Real a);
Real sqrt(Real a);
Real log(Real a);
Real exp(Real a);
Real sin(Real a);
Real cos(Real a);
Real floor(Real a);
Real pow(Real a, const Real& b);
std::pair<Real, Real> sin_cos_pi(const Real& x);

/// Integer square root floor(sqrt(n)) for n >= 0.
inline mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

/// Floor division for b > 0.
inline mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class floor_mod(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline long bit_width(const mpz_class& a) {
    return a == 0 ? 0 : static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
}

/// Natural logarithm of a positive integer, as a double.
inline double log_of(const mpz_class& a) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, a.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace siegel::mp
