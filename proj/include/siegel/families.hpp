#pragma once

// Germ families: P_theta, f + a z^2 and its rescaling, boundary germs of
// z^d + c, the families lambda z (1 - z)^(d-1) and lambda (z + z^d), conjugates
// of rotations, and the polynomial G_f.

#include "siegel/angle.hpp"
#include "siegel/errors.hpp"
#include "siegel/germ.hpp"
#include "siegel/series.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace siegel {

struct PerturbationConstants {
    static constexpr double outer_radius = 10.0;
    static constexpr double average_circle = 11.0;
    static constexpr double v_radius = 13.0 / 36.0;
    static constexpr double u_cap = 1.0 / 3.0;
};

namespace detail {

inline MpComplex mpc(std::complex<double> z, long bits) { return MpComplex::make(z, bits); }

inline mpz_class binomial(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline MpComplex times_integer(const MpComplex& z, const mpz_class& k) {
    mp::Real s(k, z.bits());
    return MpComplex(z.real() * s, z.imag() * s);
}

}  // namespace detail

/// P_theta(z) = lambda z + z^2.
inline GermSeries quad_germ(const Angle& theta, long bits = 64) {
    return make_polynomial_germ(theta, "quad", [theta](long b) {
        std::vector<MpComplex> c(3, MpComplex(b));
        c[1] = lambda_of(theta, b);
        c[2] = detail::mpc({1.0, 0.0}, b);
        return c;
    }, bits);
}

/// f(z) = lambda z.
inline GermSeries rotation_germ(const Angle& theta, long bits = 64) {
    return make_polynomial_germ(theta, "rotation", [theta](long b) {
        std::vector<MpComplex> c(2, MpComplex(b));
        c[1] = lambda_of(theta, b);
        return c;
    }, bits);
}

/// lambda (z + z^3 / 4), univalent on the unit disk.
inline GermSeries cubic_germ(const Angle& theta, long bits = 64) {
    return make_polynomial_germ(theta, "cubic", [theta](long b) {
        std::vector<MpComplex> c(4, MpComplex(b));
        c[1] = lambda_of(theta, b);
        c[3] = c[1] * detail::mpc({0.25, 0.0}, b);
        return c;
    }, bits);
}

/// lambda z / (1 - z), kept as a rational function.
inline GermSeries pole_germ(const Angle& theta, int N = 64, long bits = 64) {
    return make_rational_germ(theta, "pole", [theta](long b) {
        RationalForm rf;
        rf.P.assign(2, MpComplex(b));
        rf.P[1] = lambda_of(theta, b);
        rf.Q.assign(2, MpComplex(b));
        rf.Q[0] = detail::mpc({1.0, 0.0}, b);
        rf.Q[1] = detail::mpc({-1.0, 0.0}, b);
        return rf;
    }, N, bits);
}

/// f + a z^2.
inline GermSeries perturbed(const GermSeries& f, std::complex<double> a) {
    auto gen = [f, a](long b, int n) {
        GermSeries base = f.at(b, n);
        GermSeries g = base;
        g.source = f.source + "+a";
        if (g.coeffs.size() < 3) g.coeffs.resize(3, MpComplex(base.bits));
        g.coeffs[2] += detail::mpc(a, base.bits);
        if (base.rational) {
            // P + a z^2 Q over the same Q.
            RationalForm rf = *base.rational;
            std::size_t need = rf.Q.size() + 2;
            if (rf.P.size() < need) rf.P.resize(need, MpComplex(base.bits));
            MpComplex am = detail::mpc(a, base.bits);
            for (std::size_t k = 0; k < rf.Q.size(); ++k) rf.P[k + 2] += am * rf.Q[k];
            g.rational = std::move(rf);
        }
        if (g.is_polynomial()) {
            while (g.coeffs.size() > 2 && g.coeffs.back().is_zero()) g.coeffs.pop_back();
            g.degree = g.N();
        }
        return g;
    };
    GermSeries out = gen(f.bits, f.is_polynomial() ? f.degree : f.N());
    out.rebuild = [gen](long b, int n) {
        GermSeries g = gen(b, n);
        g.rebuild = nullptr;
        return g;
    };
    return out;
}

/// a f(z / a): coefficient k scaled by a^(1-k).
inline GermSeries rescale(const GermSeries& f, std::complex<double> a) {
    if (a == std::complex<double>{}) throw ZeroScale();
    auto gen = [f, a](long b, int n) {
        GermSeries g = f.at(b, n);
        g.source = f.source + "/rescaled";
        MpComplex inv = detail::mpc({1.0, 0.0}, g.bits) / detail::mpc(a, g.bits);
        MpComplex s = detail::mpc({1.0, 0.0}, g.bits);  // a^(1-k)
        for (std::size_t k = 1; k < g.coeffs.size(); ++k) {
            g.coeffs[k] *= s;
            s *= inv;
        }
        if (g.rational) {
            // a P(z/a) / Q(z/a)
            MpComplex sp = detail::mpc({1.0, 0.0}, g.bits), sq = sp;
            for (std::size_t k = 0; k < g.rational->P.size(); ++k) {
                if (k >= 1) {
                    g.rational->P[k] *= sp;
                    sp *= inv;
                }
            }
            for (std::size_t k = 0; k < g.rational->Q.size(); ++k) {
                g.rational->Q[k] *= sq;
                sq *= inv;
            }
        }
        return g;
    };
    GermSeries out = gen(f.bits, f.is_polynomial() ? f.degree : f.N());
    out.rebuild = [gen](long b, int n) {
        GermSeries g = gen(b, n);
        g.rebuild = nullptr;
        return g;
    };
    return out;
}

/// z^d + c near its fixed point alpha of multiplier lambda, moved to the origin.
struct UnicriticalGerm {
    GermSeries germ;
    std::complex<double> c;
    std::complex<double> alpha;
    double fixed_residual = 0.0;       // |alpha^d + c - alpha|
    double multiplier_residual = 0.0;  // |d alpha^(d-1) - lambda|
};

/// alpha = (lambda/d)^(1/(d-1)) on the given branch (0 = principal), c = alpha - alpha^d.
inline UnicriticalGerm unicritical_boundary_germ(int d, const Angle& theta, int branch = 0, long bits = 64) {
    if (d < 2) throw Error("unicritical germ needs d >= 2");
    auto alpha_of = [theta, d, branch](long b) {
        // lambda/d = d^-1 exp(2 pi i phi), phi in [-1/2, 1/2)
        mp::Real phi = theta.centered_residual(mpz_class(1), b + 16);
        phi += mp::Real(static_cast<long>(branch), b + 16);
        phi.div_si(d - 1);
        MpComplex u = MpComplex::cis2pi(phi, b);
        mp::Real mod = mp::exp(-mp::log(mp::Real(static_cast<long>(d), b)) / mp::Real(static_cast<long>(d - 1), b));
        return MpComplex(u.real() * mod, u.imag() * mod);
    };
    auto gen = [theta, d, alpha_of](long b) {
        MpComplex alpha = alpha_of(b);
        // F(w) = (alpha + w)^d - alpha^d + ... ; the constant term cancels by the choice of c.
        std::vector<MpComplex> c(static_cast<std::size_t>(d + 1), MpComplex(b));
        std::vector<MpComplex> apow(static_cast<std::size_t>(d + 1), MpComplex(b));
        apow[0] = detail::mpc({1.0, 0.0}, b);
        for (int k = 1; k <= d; ++k) apow[static_cast<std::size_t>(k)] = apow[static_cast<std::size_t>(k - 1)] * alpha;
        for (int k = 2; k <= d; ++k)
            c[static_cast<std::size_t>(k)] = detail::times_integer(apow[static_cast<std::size_t>(d - k)], detail::binomial(d, k));
        c[1] = lambda_of(theta, b);
        return c;
    };
    UnicriticalGerm out;
    out.germ = make_polynomial_germ(theta, "unicritical:" + std::to_string(d), gen, bits);
    long b = out.germ.bits;
    MpComplex alpha = alpha_of(b);
    MpComplex ad = detail::mpc({1.0, 0.0}, b);
    for (int k = 0; k < d; ++k) ad *= alpha;
    MpComplex cc = alpha - ad;
    out.alpha = alpha.to_complex();
    out.c = cc.to_complex();
    // residuals at the working width
    MpComplex fixed = ad + cc - alpha;
    out.fixed_residual = std::abs(fixed.to_complex());
    MpComplex ad1 = detail::mpc({1.0, 0.0}, b);
    for (int k = 0; k < d - 1; ++k) ad1 *= alpha;
    MpComplex mult = detail::times_integer(ad1, mpz_class(d)) - lambda_of(theta, b);
    out.multiplier_residual = std::abs(mult.to_complex());
    return out;
}

/// lambda z (1 - z)^(d-1).
inline GermSeries geyer_germ(int d, const Angle& theta, long bits = 64) {
    if (d < 2) throw Error("geyer germ needs d >= 2");
    return make_polynomial_germ(theta, "geyer:" + std::to_string(d), [theta, d](long b) {
        MpComplex lam = lambda_of(theta, b);
        std::vector<MpComplex> c(static_cast<std::size_t>(d + 1), MpComplex(b));
        for (int k = 0; k <= d - 1; ++k) {
            mpz_class bin = detail::binomial(d - 1, k);
            if (k % 2) bin = -bin;
            c[static_cast<std::size_t>(k + 1)] = detail::times_integer(lam, bin);
        }
        return c;
    }, bits);
}

/// lambda (z + z^d).
inline GermSeries dstar_germ(int d, const Angle& theta, long bits = 64) {
    if (d < 2) throw Error("dstar germ needs d >= 2");
    return make_polynomial_germ(theta, "dstar:" + std::to_string(d), [theta, d](long b) {
        MpComplex lam = lambda_of(theta, b);
        std::vector<MpComplex> c(static_cast<std::size_t>(d + 1), MpComplex(b));
        c[1] = lam;
        c[static_cast<std::size_t>(d)] = lam;
        return c;
    }, bits);
}

/// Largest coefficient of phi o f_theta - g o phi through degree N, phi(z) = -z^(d-1),
/// f_theta = dstar_germ(d, theta), g = geyer_germ(d, multiplier_angle).
/// The semi-conjugacy holds for multiplier_angle = (d-1) theta.
inline double semiconjugacy_residual(int d, const Angle& theta, int N, const Angle& multiplier_angle) {
    if (d < 2) throw Error("semiconjugacy needs d >= 2");
    using C = std::complex<double>;
    auto as_series = [N](const GermSeries& g) {
        Series<C> s(static_cast<std::size_t>(N + 1));
        for (int k = 0; k <= std::min(N, g.N()); ++k) s[static_cast<std::size_t>(k)] = g.coeff(k);
        return s;
    };
    Series<C> phi(static_cast<std::size_t>(std::min(N, d - 1) + 1));
    if (d - 1 <= N) phi[static_cast<std::size_t>(d - 1)] = -1.0;
    Series<C> f = as_series(dstar_germ(d, theta, 64));
    Series<C> g = as_series(geyer_germ(d, multiplier_angle, 64));
    Series<C> lhs = compose_oracle(phi, f, N, 53);
    Series<C> rhs = compose_oracle(g, phi, N, 53);
    return max_abs_difference(lhs, rhs, N);
}

inline double semiconjugacy_residual(int d, const Angle& theta, int N) {
    return semiconjugacy_residual(d, theta, N, mul_mod1(theta, mpz_class(d - 1)));
}

/// Conjugate of the rotation by h = Z + O(Z^2): f = h o R_theta o h^-1 through degree N.
inline GermSeries conjugate_germ(std::function<std::vector<MpComplex>(long, int)> h, std::string name,
                                 const Angle& theta, int N, long bits = 64) {
    auto gen = [h, theta](long b, int n) {
        Series<MpComplex> hs = h(b, n);
        hs.resize(static_cast<std::size_t>(n + 1), MpComplex(b));
        Series<MpComplex> inv = series_reversion(hs, n, b);
        MpComplex lam = lambda_of(theta, b);
        for (auto& x : inv) x *= lam;
        return compose_oracle(hs, inv, n, b);
    };
    return make_series_germ(theta, "conjugate:" + std::move(name), gen, N, bits);
}

/// h = z / (1 - z): b_n = 1.
inline std::vector<MpComplex> mobius_h(long bits, int N) {
    std::vector<MpComplex> h(static_cast<std::size_t>(N + 1), MpComplex(bits));
    for (int n = 1; n <= N; ++n) h[static_cast<std::size_t>(n)] = detail::mpc({1.0, 0.0}, bits);
    return h;
}

/// h = e^z - 1: b_n = 1/n!.
inline std::vector<MpComplex> exp_h(long bits, int N) {
    std::vector<MpComplex> h(static_cast<std::size_t>(N + 1), MpComplex(bits));
    mp::Real f(1L, bits);
    for (int n = 1; n <= N; ++n) {
        f.div_si(n);
        h[static_cast<std::size_t>(n)] = MpComplex(f, mp::Real(0L, bits));
    }
    return h;
}

/// Closed form of the Mobius conjugate: lambda z / (1 + (1 - lambda) z).
inline GermSeries mobius_conjugate(const Angle& theta, int N, long bits = 64) {
    return make_rational_germ(theta, "conjugate:mobius", [theta](long b) {
        MpComplex lam = lambda_of(theta, b);
        RationalForm rf;
        rf.P.assign(2, MpComplex(b));
        rf.P[1] = lam;
        rf.Q.assign(2, MpComplex(b));
        rf.Q[0] = detail::mpc({1.0, 0.0}, b);
        rf.Q[1] = detail::mpc({1.0, 0.0}, b) - lam;
        return rf;
    }, N, bits);
}

/// Closed form of the exponential conjugate: (1 + w)^lambda - 1 = sum binom(lambda, k) w^k.
inline GermSeries exp_conjugate(const Angle& theta, int N, long bits = 64) {
    return make_series_germ(theta, "conjugate:exp", [theta](long b, int n) {
        MpComplex lam = lambda_of(theta, b);
        std::vector<MpComplex> c(static_cast<std::size_t>(n + 1), MpComplex(b));
        MpComplex term = detail::mpc({1.0, 0.0}, b);
        for (int k = 1; k <= n; ++k) {
            term *= lam - detail::mpc({static_cast<double>(k - 1), 0.0}, b);
            mp::Real kk(static_cast<long>(k), b);
            term = MpComplex(term.real() / kk, term.imag() / kk);
            c[static_cast<std::size_t>(k)] = term;
        }
        return c;
    }, N, bits);
}

struct GfSpec {
    std::vector<std::pair<std::complex<double>, int>> w;  // (point, local degree >= 2)
    std::vector<std::complex<double>> u;                   // indifferent periodic points, 0 included
};

inline void validate(const GfSpec& s) {
    bool has_zero = false;
    std::vector<std::complex<double>> pts;
    for (const auto& [p, n] : s.w) {
        if (n < 2) throw Error("G_f: local degree must be >= 2");
        pts.push_back(p);
    }
    for (const auto& p : s.u) {
        if (p == std::complex<double>{}) has_zero = true;
        pts.push_back(p);
    }
    if (!has_zero) throw Error("G_f: the fixed point 0 must be listed among u");
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) throw Error("G_f: points must be distinct");
}

/// prod (z - w_i)^(n_i) prod (z - u_j)^2, coefficients by ascending degree.
inline std::vector<std::complex<double>> build_G(const GfSpec& s) {
    validate(s);
    std::vector<std::complex<double>> g{1.0};
    auto times_linear = [&g](std::complex<double> root) {
        std::vector<std::complex<double>> r(g.size() + 1);
        for (std::size_t k = 0; k < g.size(); ++k) {
            r[k + 1] += g[k];
            r[k] -= root * g[k];
        }
        g = std::move(r);
    };
    for (const auto& [p, n] : s.w)
        for (int k = 0; k < n; ++k) times_linear(p);
    for (const auto& p : s.u) {
        times_linear(p);
        times_linear(p);
    }
    return g;
}

/// Value and derivative of a polynomial given by ascending coefficients.
inline std::pair<std::complex<double>, std::complex<double>> poly_eval(const std::vector<std::complex<double>>& c,
                                                                       std::complex<double> z) {
    std::complex<double> v{}, dv{};
    for (std::size_t k = c.size(); k-- > 0;) {
        dv = dv * z + v;
        v = v * z + c[k];
    }
    return {v, dv};
}

}  // namespace siegel
