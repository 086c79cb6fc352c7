#pragma once

// Complex scalars used by the series code.
//
//   XComplex   double mantissa with a separate 64-bit binary exponent; survives
//              coefficient growth like R^-n far beyond the double range.
//   MpComplex  MPFR real and imaginary parts at a runtime mantissa width.
//
// Both expose the same surface so that the recurrences in linearize.hpp and
// series.hpp are written once as templates.

#include "siegel/mp.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

namespace siegel {

class XComplex {
public:
    XComplex() = default;
    explicit XComplex(std::complex<double> z, std::int64_t e = 0) : m_(z), e_(e) { normalize(); }

    static XComplex make(std::complex<double> z, long /*bits*/ = 53) { return XComplex(z); }
    static XComplex zero(long /*bits*/ = 53) { return XComplex(); }
    static XComplex from_reals(const mp::Real& re, const mp::Real& im, long /*bits*/ = 53) {
        long er = 0, ei = 0;
        double mr = re.frexp(er), mi = im.frexp(ei);
        if (re.is_zero()) return XComplex({0.0, mi}, ei);
        if (im.is_zero()) return XComplex({mr, 0.0}, er);
        long e = std::max(er, ei);
        return XComplex({std::ldexp(mr, static_cast<int>(er - e)),
                         std::ldexp(mi, static_cast<int>(ei - e))},
                        e);
    }
    /// exp(2 pi i t).
    static XComplex cis2pi(const mp::Real& turns, long bits = 53) {
        auto [s, c] = sin_cos_pi(turns.with_bits(std::max<long>(bits, 64)) * mp::Real(2L, 64));
        return XComplex(std::complex<double>(c.to_double(), s.to_double()));
    }
    /// exp(2 pi i t) - 1 = 2i sin(pi t) exp(i pi t), no cancellation for small t.
    static XComplex expm1_i2pi(const mp::Real& turns, long bits = 53) {
        auto [s, c] = sin_cos_pi(turns.with_bits(std::max<long>(bits, 64)));
        double sd = s.to_double(), cd = c.to_double();
        return XComplex(std::complex<double>(-2.0 * sd * sd, 2.0 * sd * cd));
    }

    long bits() const { return 53; }
    const std::complex<double>& mantissa() const { return m_; }
    std::int64_t exponent() const { return e_; }
    bool is_zero() const { return m_ == std::complex<double>(0.0, 0.0); }
    bool is_finite() const {
        return std::isfinite(m_.real()) && std::isfinite(m_.imag()) &&
               e_ < (std::int64_t{1} << 50) && e_ > -(std::int64_t{1} << 50);
    }

    /// Natural log of the modulus; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(m_)) + static_cast<double>(e_) * std::log(2.0);
    }
    /// Value as a plain complex; overflows to inf / underflows to 0 outside the double range.
    std::complex<double> to_complex() const {
        if (is_zero()) return {};
        if (e_ > 4000) return {std::copysign(HUGE_VAL, m_.real()), std::copysign(HUGE_VAL, m_.imag())};
        if (e_ < -4000) return {};
        return {std::ldexp(m_.real(), static_cast<int>(e_)), std::ldexp(m_.imag(), static_cast<int>(e_))};
    }
    XComplex to_x() const { return *this; }

    XComplex operator-() const {
        XComplex r = *this;
        r.m_ = -r.m_;
        return r;
    }
    XComplex& operator+=(const XComplex& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        std::int64_t d = o.e_ - e_;
        if (d > 1100) return *this = o;
        if (d < -1100) return *this;
        if (d >= 0) {
            m_ = std::complex<double>(std::ldexp(m_.real(), static_cast<int>(-d)),
                                      std::ldexp(m_.imag(), static_cast<int>(-d))) +
                 o.m_;
            e_ = o.e_;
        } else {
            m_ += std::complex<double>(std::ldexp(o.m_.real(), static_cast<int>(d)),
                                       std::ldexp(o.m_.imag(), static_cast<int>(d)));
        }
        normalize();
        return *this;
    }
    XComplex& operator-=(const XComplex& o) { return *this += -o; }
    XComplex& operator*=(const XComplex& o) {
        m_ *= o.m_;
        e_ += o.e_;
        normalize();
        return *this;
    }
    XComplex& operator/=(const XComplex& o) {
        m_ /= o.m_;
        e_ -= o.e_;
        normalize();
        return *this;
    }
    friend XComplex operator+(XComplex a, const XComplex& b) { return a += b; }
    friend XComplex operator-(XComplex a, const XComplex& b) { return a -= b; }
    friend XComplex operator*(XComplex a, const XComplex& b) { return a *= b; }
    friend XComplex operator/(XComplex a, const XComplex& b) { return a /= b; }

    void add_mul(const XComplex& a, const XComplex& b) { *this += a * b; }

private:
    void normalize() {
        double a = std::max(std::abs(m_.real()), std::abs(m_.imag()));
        if (a == 0.0) {
            m_ = {};
            e_ = 0;
            return;
        }
        if (!std::isfinite(a)) return;
        int k = 0;
        std::frexp(a, &k);
        if (k != 0) {
            m_ = {std::ldexp(m_.real(), -k), std::ldexp(m_.imag(), -k)};
            e_ += k;
        }
    }

    std::complex<double> m_{};
    std::int64_t e_ = 0;
};

namespace detail {

/// 2^-k for k = 0..1100.
inline const std::array<double, 1101>& negative_powers_of_two() {
    static const std::array<double, 1101> table = [] {
        std::array<double, 1101> t{};
        for (int k = 0; k <= 1100; ++k) t[k] = std::ldexp(1.0, -k);
        return t;
    }();
    return table;
}

}  // namespace detail

/// sum_{i < count} a[i] * b[count - 1 - i]
inline XComplex dot_reverse(const XComplex* a, const XComplex* b, std::size_t count) {
    if (count == 0) return {};
    std::int64_t emax = std::numeric_limits<std::int64_t>::min();
    for (std::size_t i = 0; i < count; ++i) {
        const XComplex& x = a[i];
        const XComplex& y = b[count - 1 - i];
        if (x.is_zero() || y.is_zero()) continue;
        emax = std::max(emax, x.exponent() + y.exponent());
    }
    if (emax == std::numeric_limits<std::int64_t>::min()) return {};
    const auto& pow2 = detail::negative_powers_of_two();
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const XComplex& x = a[i];
        const XComplex& y = b[count - 1 - i];
        if (x.is_zero() || y.is_zero()) continue;
        std::int64_t d = emax - x.exponent() - y.exponent();
        if (d > 1100) continue;
        double s = pow2[static_cast<std::size_t>(d)];
        const auto& xm = x.mantissa();
        const auto& ym = y.mantissa();
        re += s * (xm.real() * ym.real() - xm.imag() * ym.imag());
        im += s * (xm.real() * ym.imag() + xm.imag() * ym.real());
    }
    return XComplex({re, im}, emax);
}

class MpComplex {
public:
    explicit MpComplex(long bits = mp::kDefaultBits) : re_(bits), im_(bits) {}
    MpComplex(mp::Real re, mp::Real im) : re_(std::move(re)), im_(std::move(im)) {}

    static MpComplex make(std::complex<double> z, long bits) {
        return MpComplex(mp::Real(z.real(), bits), mp::Real(z.imag(), bits));
    }
    static MpComplex zero(long bits) { return MpComplex(bits); }
    static MpComplex from_reals(const mp::Real& re, const mp::Real& im, long bits) {
        return MpComplex(re.with_bits(bits), im.with_bits(bits));
    }
    static MpComplex cis2pi(const mp::Real& turns, long bits) {
        auto [s, c] = sin_cos_pi(turns.with_bits(bits + 16) * mp::Real(2L, bits + 16));
        return MpComplex(c.with_bits(bits), s.with_bits(bits));
    }
    static MpComplex expm1_i2pi(const mp::Real& turns, long bits) {
        auto [s, c] = sin_cos_pi(turns.with_bits(bits + 16));
        mp::Real re = s * s;
        re.mul_si(-2);
        mp::Real im = s * c;
        im.mul_si(2);
        return MpComplex(re.with_bits(bits), im.with_bits(bits));
    }

    long bits() const { return re_.bits(); }
    const mp::Real& real() const { return re_; }
    const mp::Real& imag() const { return im_; }
    mp::Real& real() { return re_; }
    mp::Real& imag() { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

    double log_abs() const { return to_x().log_abs(); }
    XComplex to_x() const { return XComplex::from_reals(re_, im_); }
    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    MpComplex operator-() const { return MpComplex(-re_, -im_); }
    MpComplex& operator+=(const MpComplex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    MpComplex& operator-=(const MpComplex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    MpComplex& operator*=(const MpComplex& o) {
        long b = std::max(bits(), o.bits());
        mp::Real r(b), i(b);
        mpfr_fmms(r.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
        mpfr_fmma(i.get(), re_.get(), o.im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    MpComplex& operator/=(const MpComplex& o) {
        long b = std::max(bits(), o.bits()) + 8;
        mp::Real den(b), r(b), i(b);
        mpfr_fmma(den.get(), o.re_.get(), o.re_.get(), o.im_.get(), o.im_.get(), MPFR_RNDN);
        mpfr_fmma(r.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
        mpfr_fmms(i.get(), im_.get(), o.re_.get(), re_.get(), o.im_.get(), MPFR_RNDN);
        long out = std::max(bits(), o.bits());
        re_ = (r / den).with_bits(out);
        im_ = (i / den).with_bits(out);
        return *this;
    }
    friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
    friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
    friend MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
    friend MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }

    void add_mul(const MpComplex& a, const MpComplex& b) { *this += a * b; }

private:
    mp::Real re_, im_;
};

inline MpComplex dot_reverse(const MpComplex* a, const MpComplex* b, std::size_t count) {
    long bits = count ? a[0].bits() : mp::kDefaultBits;
    MpComplex acc(bits);
    mp::Real t(bits);
    for (std::size_t i = 0; i < count; ++i) {
        const MpComplex& x = a[i];
        const MpComplex& y = b[count - 1 - i];
        mpfr_fmms(t.get(), x.real().get(), y.real().get(), x.imag().get(), y.imag().get(), MPFR_RNDN);
        mpfr_add(acc.real().get(), acc.real().get(), t.get(), MPFR_RNDN);
        mpfr_fmma(t.get(), x.real().get(), y.imag().get(), x.imag().get(), y.real().get(), MPFR_RNDN);
        mpfr_add(acc.imag().get(), acc.imag().get(), t.get(), MPFR_RNDN);
    }
    return acc;
}

/// Plain complex<double> support so the composition oracle also runs on ordinary doubles.
inline std::complex<double> dot_reverse(const std::complex<double>* a, const std::complex<double>* b,
                                        std::size_t count) {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < count; ++i) acc += a[i] * b[count - 1 - i];
    return acc;
}

inline XComplex zero_like(const XComplex&) { return {}; }
inline MpComplex zero_like(const MpComplex& x) { return MpComplex(x.bits()); }
inline std::complex<double> zero_like(const std::complex<double>&) { return {}; }

inline std::complex<double> to_complex(const XComplex& x) { return x.to_complex(); }
inline std::complex<double> to_complex(const MpComplex& x) { return x.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }

inline XComplex to_x(const XComplex& x) { return x; }
inline XComplex to_x(const MpComplex& x) { return x.to_x(); }
inline XComplex to_x(const std::complex<double>& x) { return XComplex(x); }

inline double log_abs(const XComplex& x) { return x.log_abs(); }
inline double log_abs(const MpComplex& x) { return x.log_abs(); }
inline double log_abs(const std::complex<double>& x) {
    return x == std::complex<double>{} ? -std::numeric_limits<double>::infinity() : std::log(std::abs(x));
}

/// Converts an MPFR complex to the working scalar type.
template <class T>
T scalar_cast(const MpComplex& z, long bits) {
    if constexpr (std::is_same_v<T, MpComplex>) {
        return z.bits() == bits ? z : MpComplex::from_reals(z.real(), z.imag(), bits);
    } else if constexpr (std::is_same_v<T, XComplex>) {
        return z.to_x();
    } else {
        return z.to_complex();
    }
}

template <class T>
T scalar_from(std::complex<double> z, long bits) {
    if constexpr (std::is_same_v<T, MpComplex>) {
        return MpComplex::make(z, bits);
    } else {
        return T(z);
    }
}

template <class T>
long scalar_bits(const T& x) {
    if constexpr (std::is_same_v<T, std::complex<double>>) {
        (void)x;
        return 53;
    } else {
        return x.bits();
    }
}

/// Invokes fn(std::type_identity<T>{}) with XComplex for bits <= 53, MpComplex otherwise.
template <class Fn>
decltype(auto) dispatch_scalar(long bits, Fn&& fn) {
    if (bits <= 53) return fn(std::type_identity<XComplex>{});
    return fn(std::type_identity<MpComplex>{});
}

}  // namespace siegel
