#pragma once

// Desk-scale checks built from the other modules: the band of
// S = Y + log R(P_theta), circle averages of log R over f + a z^2, the
// inequality log R(f) >= <|a| = r> log R(f_a), the two-sided bounds for
// lambda (z + z^d), and the multiplication lemma for Y.

#include "siegel/brjuno.hpp"
#include "siegel/families.hpp"
#include "siegel/linearize.hpp"
#include "siegel/radius.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace siegel {

struct ScanRow {
    std::string theta;
    std::string family;
    double Y = std::numeric_limits<double>::quiet_NaN();
    double Y_tail = 0.0;
    double B = std::numeric_limits<double>::quiet_NaN();
    double log_R = std::numeric_limits<double>::quiet_NaN();
    double S = std::numeric_limits<double>::quiet_NaN();
    double uncertainty = 0.0;
    bool flagged = false;
    std::string diagnostics;
    std::vector<double> extra;  // one value per ScanReport::extra_columns entry
};

struct ScanReport {
    std::string kind;
    std::vector<std::string> extra_columns;
    std::vector<ScanRow> rows;
    std::map<std::string, double> summary;
    std::map<std::string, std::string> provenance;

    int flagged() const {
        return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const ScanRow& r) { return r.flagged; }));
    }
    double column(std::size_t row, const std::string& name) const {
        auto it = std::find(extra_columns.begin(), extra_columns.end(), name);
        if (it == extra_columns.end()) throw Error("no column " + name);
        return rows[row].extra[static_cast<std::size_t>(it - extra_columns.begin())];
    }
};

/// min_S, max_S and the flagged count, from the rows alone.
inline void summarize_S(ScanReport& rep) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    int used = 0;
    for (const auto& r : rep.rows) {
        if (r.flagged || !std::isfinite(r.S)) continue;
        lo = std::min(lo, r.S);
        hi = std::max(hi, r.S);
        ++used;
    }
    rep.summary["rows"] = static_cast<double>(rep.rows.size());
    rep.summary["flagged"] = rep.flagged();
    if (used) {
        rep.summary["min_S"] = lo;
        rep.summary["max_S"] = hi;
        rep.summary["band_S"] = hi - lo;
    }
}

// ---------------------------------------------------------------------------
// angle samples

/// Purely periodic continued fractions with period <= max_period and quotients <= max_quotient.
inline std::vector<Angle> random_quadratic_angles(int count, std::uint64_t seed, int max_period = 8,
                                                  int max_quotient = 12) {
    std::mt19937_64 rng(seed);
    auto draw = [&rng](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    std::vector<Angle> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        int p = draw(1, max_period);
        std::vector<long> period(static_cast<std::size_t>(p));
        for (auto& a : period) a = draw(1, max_quotient);
        out.push_back(periodic_angle(period));
    }
    return out;
}

inline std::vector<Angle> random_rational_angles(int count, std::uint64_t seed, long max_q = 1000000) {
    std::mt19937_64 rng(seed);
    std::vector<Angle> out;
    for (int i = 0; i < count; ++i) {
        long q = 2 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_q - 1));
        long p = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(q - 1));
        out.push_back(Angle::rational(p, q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// radius of one germ

struct RadiusOutcome {
    RadiusEstimate R;
    bool flagged = false;
    std::string diagnostics;
};

inline RadiusOutcome radius_of(const GermSeries& f, int N, long bits, double window = kDefaultWindow) {
    RadiusOutcome out;
    try {
        LinearizationResult L = linearize(f, N, bits);
        out.R = hadamard_radius(L, window);
        if (L.any_overflow()) {
            out.flagged = true;
            out.diagnostics = "overflow after n=" + std::to_string(L.valid);
        }
    } catch (const Resonance& e) {
        out.flagged = true;
        out.diagnostics = e.what();
    } catch (const PrecisionExhausted& e) {
        out.flagged = true;
        out.diagnostics = e.what();
    } catch (const TooFewCoefficients& e) {
        out.flagged = true;
        out.diagnostics = e.what();
    }
    return out;
}

// ---------------------------------------------------------------------------
// conjecture band

inline ScanReport conjecture_scan(const std::vector<Angle>& thetas, int N, long bits = 53, int depth = kDefaultDepth,
                                  double window = kDefaultWindow) {
    ScanReport rep;
    rep.kind = "scan-conjecture";
    rep.extra_columns = {"B_tail", "R", "R_slope"};
    for (const Angle& t : thetas) {
        ScanRow row;
        row.theta = t.describe();
        row.family = "quad";
        BrjunoValue Y = yoccoz_Y(t, depth);
        if (Y.infinite) {
            row.Y = Y.value;
            row.flagged = true;
            row.diagnostics = "infinite-Y";
            row.extra = {0.0, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
            rep.rows.push_back(std::move(row));
            continue;
        }
        BrjunoValue B = brjuno_B(t, depth);
        row.Y = Y.value;
        row.Y_tail = Y.tail_bound;
        row.B = B.value;
        RadiusOutcome ro = radius_of(quad_germ(t), N, bits, window);
        row.flagged = ro.flagged;
        row.diagnostics = ro.diagnostics;
        if (Y.undecidable) {
            row.flagged = true;
            row.diagnostics += row.diagnostics.empty() ? "Y undecidable" : "; Y undecidable";
        }
        row.log_R = ro.R.log_value;
        row.S = row.Y + row.log_R;
        row.uncertainty = ro.R.uncertainty;
        row.extra = {B.tail_bound, ro.R.value, ro.R.slope_value};
        rep.rows.push_back(std::move(row));
    }
    summarize_S(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// circle averages

struct CircleAverage {
    double r = 0.0;
    int M = 0;
    double mean = 0.0;         // mean of log R(f_a) over |a| = r
    double uncertainty = 0.0;  // mean per-point relative spread
    int flagged = 0;
    std::vector<double> values;
};

/// Trapezoid rule on a_j = r exp(2 pi i j / M).
inline CircleAverage circle_average(const GermSeries& f, double r, int M, int N, long bits = 53,
                                    double window = kDefaultWindow) {
    if (M < 16) throw Error("circle average needs M >= 16");
    if (!(r > 0.0)) throw Error("circle radius must be positive");
    CircleAverage ca;
    ca.r = r;
    ca.M = M;
    double sum = 0.0, usum = 0.0;
    int used = 0;
    for (int j = 0; j < M; ++j) {
        double t = 2.0 * M_PI * j / M;
        std::complex<double> a = std::polar(r, t);
        RadiusOutcome ro = radius_of(perturbed(f, a), N, bits, window);
        if (ro.flagged || ro.R.infinite) {
            ++ca.flagged;
            ca.values.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        ca.values.push_back(ro.R.log_value);
        sum += ro.R.log_value;
        usum += ro.R.uncertainty;
        ++used;
    }
    if (ca.flagged * 10 > M) throw Error("circle average: more than 10% of the points flagged");
    ca.mean = sum / used;
    ca.uncertainty = usum / used;
    return ca;
}

struct HarmonicRow {
    double r = 0.0;
    double average = 0.0;
    double delta = 0.0;  // average + log r - log R(P_theta)
    double uncertainty = 0.0;
};

struct HarmonicReport {
    std::string family;
    std::string theta;
    double log_R_P = 0.0;
    double uncertainty_P = 0.0;
    std::vector<HarmonicRow> rows;

    double max_abs_delta() const {
        double m = 0.0;
        for (const auto& r : rows) m = std::max(m, std::abs(r.delta));
        return m;
    }
    double flatness() const {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& r : rows) {
            lo = std::min(lo, r.delta);
            hi = std::max(hi, r.delta);
        }
        return rows.empty() ? 0.0 : hi - lo;
    }
};

inline HarmonicReport harmonicity_check(const GermSeries& f, const std::vector<double>& radii, int M, int N,
                                        long bits = 53, double window = kDefaultWindow) {
    for (double r : radii)
        if (!(r > PerturbationConstants::outer_radius))
            throw Error("harmonicity check needs radii > " + std::to_string(PerturbationConstants::outer_radius));
    HarmonicReport rep;
    rep.family = f.source;
    rep.theta = f.theta.describe();
    RadiusOutcome P = radius_of(quad_germ(f.theta), N, bits, window);
    if (P.flagged) throw Error("harmonicity check: P_theta radius flagged: " + P.diagnostics);
    rep.log_R_P = P.R.log_value;
    rep.uncertainty_P = P.R.uncertainty;
    for (double r : radii) {
        CircleAverage ca = circle_average(f, r, M, N, bits, window);
        HarmonicRow row;
        row.r = r;
        row.average = ca.mean;
        row.delta = ca.mean + std::log(r) - rep.log_R_P;
        row.uncertainty = ca.uncertainty + rep.uncertainty_P;
        rep.rows.push_back(row);
    }
    return rep;
}

struct FatouReport {
    std::string family;
    std::string theta;
    double log_R_f = 0.0;      // +inf for the rotation
    double average = 0.0;
    double uncertainty = 0.0;
    double slack = 0.0;        // log R(f) - average
    bool holds = false;
};

inline bool univalent_whitelisted(const GermSeries& f) {
    return f.source == "rotation" || f.source == "pole" || f.source == "cubic";
}

inline FatouReport fatou_check(const GermSeries& f, double r, int M, int N, long bits = 53,
                               double window = kDefaultWindow) {
    if (!univalent_whitelisted(f)) throw Error("fatou check: '" + f.source + "' is not a whitelisted univalent germ");
    FatouReport rep;
    rep.family = f.source;
    rep.theta = f.theta.describe();
    RadiusOutcome own = radius_of(f, N, bits, window);
    if (own.flagged) throw Error("fatou check: radius of f flagged: " + own.diagnostics);
    CircleAverage ca = circle_average(f, r, M, N, bits, window);
    rep.log_R_f = own.R.log_value;
    rep.average = ca.mean;
    rep.uncertainty = ca.uncertainty + (own.R.infinite ? 0.0 : own.R.uncertainty);
    rep.slack = rep.log_R_f - rep.average;
    rep.holds = rep.slack >= -rep.uncertainty;
    return rep;
}

// ---------------------------------------------------------------------------
// lambda (z + z^d)

inline ScanReport dstar_bounds_scan(int d, const std::vector<Angle>& thetas, int N, long bits = 53,
                                    int depth = kDefaultDepth, double window = kDefaultWindow) {
    if (d < 3) throw Error("dstar scan needs d >= 3");
    ScanReport rep;
    rep.kind = "scan-dstar";
    rep.extra_columns = {"Y_multiple", "centered", "upper_side", "witness", "log_R_geyer", "geyer_gap"};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    int Ng = (N - 1) / (d - 1) + 1;
    for (const Angle& t : thetas) {
        ScanRow row;
        row.theta = t.describe();
        row.family = "dstar:" + std::to_string(d);
        row.extra.assign(rep.extra_columns.size(), nan);
        Angle mt = mul_mod1(t, mpz_class(d - 1));
        BrjunoValue Y = yoccoz_Y(t, depth);
        BrjunoValue Ym = yoccoz_Y(mt, depth);
        row.Y = Y.value;
        row.Y_tail = Y.tail_bound;
        if (Y.infinite || Ym.infinite) {
            row.flagged = true;
            row.diagnostics = "rational multiple";
            rep.rows.push_back(std::move(row));
            continue;
        }
        row.B = brjuno_B(t, depth).value;
        RadiusOutcome f = radius_of(dstar_germ(d, t), N, bits, window);
        RadiusOutcome g = radius_of(geyer_germ(d, mt), Ng, bits, window);
        row.flagged = f.flagged || g.flagged;
        row.diagnostics = f.diagnostics + (g.flagged ? " geyer: " + g.diagnostics : "");
        row.log_R = f.R.log_value;
        row.S = row.Y + row.log_R;
        row.uncertainty = f.R.uncertainty;
        double dm = d - 1.0;
        row.extra = {Ym.value,
                     row.log_R + Ym.value / dm,
                     row.log_R + Y.value / dm,
                     row.log_R + Y.value,
                     g.R.log_value,
                     g.R.log_value - dm * row.log_R};
        rep.rows.push_back(std::move(row));
    }
    summarize_S(rep);
    double clo = std::numeric_limits<double>::infinity(), chi = -clo, wlo = clo, whi = -clo, gmax = 0.0, uhi = -clo;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].flagged) continue;
        double c = rep.column(i, "centered"), w = rep.column(i, "witness");
        clo = std::min(clo, c);
        chi = std::max(chi, c);
        wlo = std::min(wlo, w);
        whi = std::max(whi, w);
        uhi = std::max(uhi, rep.column(i, "upper_side"));
        gmax = std::max(gmax, std::abs(rep.column(i, "geyer_gap")));
    }
    rep.summary["min_centered"] = clo;
    rep.summary["max_centered"] = chi;
    rep.summary["band_centered"] = chi - clo;
    rep.summary["max_upper_side"] = uhi;
    rep.summary["witness_spread"] = whi - wlo;
    rep.summary["max_abs_geyer_gap"] = gmax;
    return rep;
}

// ---------------------------------------------------------------------------
// multiplication lemma

inline ScanReport lemma_scan(const std::vector<Angle>& thetas, const std::vector<long>& ms, int depth = kDefaultDepth) {
    ScanReport rep;
    rep.kind = "check-lemma";
    rep.extra_columns = {"m", "Y_multiple", "gap", "log_2m", "ratio", "tail"};
    double C = 0.0;
    for (const Angle& t : thetas) {
        BrjunoValue Y = yoccoz_Y(t, depth);
        for (long m : ms) {
            ScanRow row;
            row.theta = t.describe();
            row.family = "m=" + std::to_string(m);
            row.Y = Y.value;
            row.Y_tail = Y.tail_bound;
            if (Y.infinite) {
                row.flagged = true;
                row.diagnostics = "infinite-Y";
                row.extra.assign(rep.extra_columns.size(), std::numeric_limits<double>::quiet_NaN());
                rep.rows.push_back(std::move(row));
                continue;
            }
            BrjunoValue Ym = yoccoz_Y(mul_mod1(t, mpz_class(m)), depth);
            double gap = Y.value - Ym.value;
            double l2m = std::log(2.0 * static_cast<double>(m));
            row.extra = {static_cast<double>(m), Ym.value, gap, l2m, gap / l2m, Y.tail_bound + Ym.tail_bound};
            C = std::max(C, gap / l2m);
            rep.rows.push_back(std::move(row));
        }
    }
    // Violations against the fitted constant, allowing for both truncation tails.
    int violations = 0;
    double max_tail = 0.0;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (rep.rows[i].flagged) continue;
        double tail = rep.column(i, "tail");
        max_tail = std::max(max_tail, tail);
        if (rep.column(i, "gap") > C * rep.column(i, "log_2m") + tail) ++violations;
    }
    rep.summary["rows"] = static_cast<double>(rep.rows.size());
    rep.summary["flagged"] = rep.flagged();
    rep.summary["fitted_C"] = C;
    rep.summary["violations"] = violations;
    rep.summary["max_tail"] = max_tail;
    return rep;
}

}  // namespace siegel
