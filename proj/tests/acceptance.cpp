// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "siegel/siegel.hpp"

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace siegel;

namespace tol {

constexpr double golden_Y = 1e-9;
constexpr double golden_Y_seconds = 1.0;
constexpr int cf_angles = 1000;
constexpr long cf_max_q = 100;  // denominators scanned for the Legendre membership test
constexpr double cf_seconds = 10.0;
constexpr double oracle_relative = 1e-10;
constexpr double mobius_coeff = 1e-12;
constexpr double mobius_radius = 1e-3;
constexpr double exp_relative = 1e-8;
constexpr double semiconj_residual = 1e-12;
constexpr double semiconj_control = 0.1;
constexpr double cross_radius = 0.05;
constexpr double cross_radius_seconds = 120.0;
constexpr double trivial_delta = 1e-6;
constexpr double harmonic_delta = 1e-8;    // bring-up: below 1e-15 on the cubic and pole families
constexpr double S_band = 2.0;             // bring-up: S in [0.38, 1.33] at N = 4096 and 8192
constexpr double conjecture_seconds = 600.0;
constexpr double lemma_C_drift = 0.10;
constexpr double dstar_centered = 1.0;     // bring-up: centered in [-0.13, 0.41]
constexpr double geyer_ratio = 0.05;

}  // namespace tol

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s  %2d  %-26s %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), s);
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

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

int main() {
    std::printf("criterion   name                       result\n");

    criterion(1, "brjuno golden value", [] {
        // log(1/g) / (1 - g), g = (sqrt 5 - 1) / 2, evaluated directly in MPFR
        mp::Real g = (mp::sqrt(mp::Real(5L, 256)) - mp::Real(1L, 256)) / mp::Real(2L, 256);
        double closed = (-mp::log(g) / (mp::Real(1L, 256) - g)).to_double();
        auto t0 = std::chrono::steady_clock::now();
        BrjunoValue Y = yoccoz_Y(Angle::golden(), 64);
        double s = seconds_since(t0);
        double err = std::abs(Y.value - closed);
        return Outcome{err < tol::golden_Y && s < tol::golden_Y_seconds,
                       fmt("Y=%.15f closed=%.15f err=%.1e (<%.0e) in %.3f s", Y.value, closed, err, tol::golden_Y, s)};
    });

    criterion(2, "continued fraction facts", [] {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<Angle> angles = random_quadratic_angles(tol::cf_angles / 2, 2024);
        for (const Angle& a : random_rational_angles(tol::cf_angles / 2, 2024)) angles.push_back(a);
        long det = 0, approx = 0, fib = 0, legendre = 0, checks = 0;
        for (const Angle& t : angles) {
            Convergents c = convergents(cf_expand(t, 64));
            if (!determinant_identity_holds(c)) ++det;
            // for a rational angle the last convergent is the angle itself
            std::size_t upto = t.is_rational() ? c.size() - 1 : c.size();
            for (std::size_t n = 0; n + 1 < upto; ++n) {
                ++checks;
                if (!approximant_inequality_holds(t, c, n)) ++approx;
            }
            for (std::size_t n = 0; n < c.size(); ++n)
                if (c.q[n] < fibonacci(static_cast<int>(n) + 1)) ++fib;
            double x = t.to_double();
            for (long q = 1; q <= tol::cf_max_q; ++q) {
                mpz_class qq = q;
                long base = static_cast<long>(std::floor(x * static_cast<double>(q)));
                for (long p = base - 1; p <= base + 2; ++p)
                    if (compare_distance(t, p, qq, 2 * qq * qq) < 0 && !is_convergent(c, p, qq)) ++legendre;
            }
        }
        double s = seconds_since(t0);
        bool ok = det == 0 && approx == 0 && fib == 0 && legendre == 0 && s < tol::cf_seconds;
        return Outcome{ok, fmt("%zu angles, %ld bound checks; failures det=%ld approx=%ld fib=%ld legendre=%ld in %.1f s",
                               angles.size(), checks, det, approx, fib, legendre, s)};
    });

    criterion(3, "linearizer vs composition", [] {
        std::mt19937_64 rng(31);
        std::vector<Angle> thetas = random_quadratic_angles(20, 31);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            int d = 2 + i % 5;
            GermSeries f = random_polynomial(thetas[static_cast<std::size_t>(i)], d, rng());
            LinearizationResult L = linearize(f, 256);
            RadiusEstimate R = hadamard_radius(L);
            worst = std::max(worst, conjugacy_residual(f, L, 256, R.log_value));
        }
        return Outcome{worst < tol::oracle_relative,
                       fmt("20 germs, d<=6, N=256: max relative residual %.1e (<%.0e)", worst, tol::oracle_relative)};
    });

    criterion(4, "mobius and exp exact cases", [] {
        Angle t = Angle::golden();
        LinearizationResult M = linearize(mobius_conjugate(t, 512, 128), 512, 128);
        double merr = 0.0;
        for (int n = 1; n <= 512; ++n)
            merr = std::max(merr, std::abs(M.b[static_cast<std::size_t>(n)].to_complex() - 1.0));
        RadiusEstimate RM = hadamard_radius(M);
        LinearizationResult E = linearize(exp_conjugate(t, 96, 768), 96, 768);
        double eerr = 0.0;
        double fact = 1.0;
        for (int n = 1; n <= 60; ++n) {
            fact *= n;
            eerr = std::max(eerr, std::abs(E.b[static_cast<std::size_t>(n)].to_complex() * fact - 1.0));
        }
        RadiusEstimate RE = hadamard_radius(E);
        bool ok = merr < tol::mobius_coeff && std::abs(RM.value - 1.0) < tol::mobius_radius &&
                  eerr < tol::exp_relative && RE.infinite;
        return Outcome{ok, fmt("mobius max|b_n-1|=%.1e R=%.6f; exp max|n! b_n-1|=%.1e infinite=%d", merr, RM.value,
                               eerr, RE.infinite ? 1 : 0)};
    });

    criterion(5, "semi-conjugacy", [] {
        double worst = 0.0, weakest = 1e300;
        for (const Angle& t : {Angle::golden(), Angle::parse("silver"), periodic_angle({1, 4})}) {
            for (int d = 2; d <= 8; ++d) {
                worst = std::max(worst, semiconjugacy_residual(d, t, 64));
                weakest = std::min(weakest, semiconjugacy_residual(d, t, 64, mul_mod1(t, mpz_class(d))));
            }
        }
        return Outcome{worst < tol::semiconj_residual && weakest > tol::semiconj_control,
                       fmt("d=2..8, 3 angles: max residual %.1e, min control %.3f", worst, weakest)};
    });

    criterion(6, "hadamard vs capacity radius", [] {
        auto t0 = std::chrono::steady_clock::now();
        RadiusEstimate R = hadamard_radius(linearize(quad_germ(Angle::golden()), 4096));
        CapacityEstimate C = conformal_radius_capacity(Angle::golden(), 100000, 1000, 1000);
        double s = seconds_since(t0);
        double rel = std::abs(R.value - C.conformal_radius) / C.conformal_radius;
        return Outcome{rel < tol::cross_radius && s < tol::cross_radius_seconds,
                       fmt("hadamard %.5f capacity %.5f relative %.4f (<%.2f)", R.value, C.conformal_radius, rel,
                           tol::cross_radius)};
    });

    criterion(7, "harmonicity identity", [] {
        Angle g = Angle::golden();
        std::vector<double> radii{11.0, 12.0, 15.0};
        HarmonicReport triv = harmonicity_check(rotation_germ(g), radii, 64, 1024);
        bool ok = triv.max_abs_delta() < tol::trivial_delta;
        std::string detail = fmt("rotation max|D|=%.1e", triv.max_abs_delta());
        for (const GermSeries& f : {cubic_germ(g), pole_germ(g, 1024)}) {
            HarmonicReport h = harmonicity_check(f, radii, 64, 1024);
            double unc = 0.0;
            for (const auto& r : h.rows) unc = std::max(unc, r.uncertainty);
            ok = ok && h.max_abs_delta() < tol::harmonic_delta && h.flatness() <= unc;
            detail += fmt("; %s max|D|=%.1e flat=%.1e unc=%.1e", f.source.c_str(), h.max_abs_delta(), h.flatness(), unc);
        }
        return Outcome{ok, detail};
    });

    criterion(8, "fatou inequality", [] {
        Angle g = Angle::golden(), s = Angle::parse("silver");
        bool ok = true;
        std::string detail;
        for (const GermSeries& f : {rotation_germ(g), pole_germ(g, 1024), cubic_germ(s)}) {
            FatouReport r = fatou_check(f, 11.0, 64, 1024);
            ok = ok && r.holds;
            detail += fmt("%s%s slack=%.3f", detail.empty() ? "" : "; ", f.source.c_str(), r.slack);
        }
        return Outcome{ok, detail};
    });

    criterion(9, "conjecture band", [] {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<Angle> thetas = random_quadratic_angles(50, 1);
        ScanReport a = conjecture_scan(thetas, 4096);
        ScanReport b = conjecture_scan(thetas, 8192);
        double s = seconds_since(t0);
        double umax = 0.0, smax = 0.0;
        for (const ScanReport* r : {&a, &b})
            for (const auto& row : r->rows) {
                umax = std::max(umax, row.uncertainty);
                smax = std::max(smax, std::abs(row.S));
            }
        double ba = a.summary.at("band_S"), bb = b.summary.at("band_S");
        bool ok = a.flagged() == 0 && b.flagged() == 0 && bb <= ba + umax && smax < tol::S_band &&
                  s < tol::conjecture_seconds;
        return Outcome{ok, fmt("S in [%.4f, %.4f]; band %.4f (N=4096) -> %.4f (N=8192), row unc <= %.4f; max|S| %.3f "
                               "(<%.1f)",
                               a.summary.at("min_S"), a.summary.at("max_S"), ba, bb, umax, smax, tol::S_band)};
    });

    criterion(10, "multiplication lemma", [] {
        std::vector<long> ms;
        for (long m = 2; m <= 64; ++m) ms.push_back(m);
        ScanReport a = lemma_scan(random_quadratic_angles(200, 1), ms);
        ScanReport b = lemma_scan(random_quadratic_angles(400, 1), ms);
        double ca = a.summary.at("fitted_C"), cb = b.summary.at("fitted_C");
        double drift = std::abs(cb - ca) / ca;
        bool ok = a.summary.at("violations") == 0 && b.summary.at("violations") == 0 && drift < tol::lemma_C_drift;
        return Outcome{ok, fmt("C=%.4f (200 angles) C=%.4f (400 angles) drift %.3f; violations %g/%g", ca, cb, drift,
                               a.summary.at("violations"), b.summary.at("violations"))};
    });

    criterion(11, "z + z^3 two-sided bounds", [] {
        ScanReport r = dstar_bounds_scan(3, random_quadratic_angles(30, 1), 4096);
        double lo = r.summary.at("min_centered"), hi = r.summary.at("max_centered");
        double ratio = std::expm1(r.summary.at("max_abs_geyer_gap"));
        bool ok = r.flagged() == 0 && std::max(std::abs(lo), std::abs(hi)) < tol::dstar_centered &&
                  ratio < tol::geyer_ratio;
        return Outcome{ok, fmt("centered in [%.4f, %.4f] (|.|<%.1f); max |R_g/R_f^2 - 1| = %.1e", lo, hi,
                               tol::dstar_centered, ratio)};
    });

    criterion(12, "determinism", [] {
        std::vector<RunConfig> configs;
        auto add = [&](const char* sub, auto tweak) {
            RunConfig c;
            c.subcommand = sub;
            tweak(c);
            configs.push_back(c);
        };
        add("brjuno", [](RunConfig& c) { c.theta = {"golden", "silver", "quad:3,2,13,11"}; });
        add("linearize", [](RunConfig& c) { c.N = 512; });
        add("radius", [](RunConfig& c) { c.family = "dstar:4"; c.N = 1024; });
        add("capacity", [](RunConfig& c) { c.count = 5000; c.burnin = 100; c.points = 200; c.N = 1024; });
        add("scan-conjecture", [](RunConfig& c) { c.samples = 8; c.N = 512; });
        add("check-harmonic", [](RunConfig& c) { c.N = 256; c.M = 16; });
        add("check-fatou", [](RunConfig& c) { c.N = 256; c.M = 16; });
        add("check-lemma", [](RunConfig& c) { c.samples = 5; c.m_max = 16; });
        add("scan-dstar", [](RunConfig& c) { c.samples = 4; c.N = 512; });
        add("semiconj", [](RunConfig&) {});
        int identical = 0;
        for (const RunConfig& c : configs) {
            std::string out[2];
            for (auto& o : out) {
                RunResult r = execute(c);
                std::ostringstream ss;
                write_csv(ss, r.report, to_json(c));
                write_json(ss, r.report, to_json(c));
                o = ss.str();
            }
            if (out[0] == out[1]) ++identical;
        }
        return Outcome{identical == static_cast<int>(configs.size()),
                       fmt("%d of %zu subcommands byte-identical on rerun", identical, configs.size())};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
