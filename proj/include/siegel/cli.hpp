#pragma once

// Command-line driver: RunConfig (JSON round trip, strict keys), family
// descriptors, one function per subcommand producing a ScanReport, and run()
// which writes <out>.csv / <out>.json (or CSV to stdout when out is empty).
//
// Exit status: 0 ok, 1 too many flagged rows, 2 config or precondition error.

#include "siegel/capacity.hpp"
#include "siegel/experiments.hpp"
#include "siegel/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace siegel {

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s = {"brjuno",        "linearize",   "radius",      "capacity",
                                               "scan-conjecture", "check-harmonic", "check-fatou", "check-lemma",
                                               "scan-dstar",    "semiconj"};
    return s;
}

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> theta;  // empty: subcommand default (golden, or a random sample)
    std::string family = "quad";
    int N = 0;                       // 0: 4096 for polynomial germs, 1024 otherwise
    long bits = 53;
    int depth = kDefaultDepth;
    int M = 64;
    std::vector<double> radii{11.0, 12.0, 15.0};
    std::string out;                 // path prefix; not part of the snapshot
    std::uint64_t seed = 1;
    int samples = 50;
    double window = kDefaultWindow;
    int d = 3;
    int m_max = 64;
    long count = 100000;
    long burnin = 1000;
    int points = 1000;
    double max_flagged_fraction = 0.1;
};

inline nlohmann::json to_json(const RunConfig& c) {
    return nlohmann::json{{"subcommand", c.subcommand},
                          {"theta", c.theta},
                          {"family", c.family},
                          {"N", c.N},
                          {"bits", c.bits},
                          {"depth", c.depth},
                          {"M", c.M},
                          {"radii", c.radii},
                          {"seed", c.seed},
                          {"samples", c.samples},
                          {"window", c.window},
                          {"d", c.d},
                          {"m_max", c.m_max},
                          {"count", c.count},
                          {"burnin", c.burnin},
                          {"points", c.points},
                          {"max_flagged_fraction", c.max_flagged_fraction}};
}

namespace detail {

template <class T>
void read_key(const nlohmann::json& j, const char* key, T& dst) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        dst = it->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("config key '") + key + "' has the wrong type");
    }
}

inline std::string line_context(const std::string& text, std::size_t byte) {
    std::size_t line = 1, start = 0;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            start = i + 1;
        }
    }
    std::size_t end = text.find('\n', start);
    std::string src = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::size_t col = byte > start ? byte - start : 1;
    return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + src;
}

}  // namespace detail

/// Keys of `j` override `base`; any key not in RunConfig is an error.
inline RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {}) {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    nlohmann::json known = to_json(base);
    known["out"] = "";
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.contains(it.key())) throw ParseError("unknown config key '" + it.key() + "'");
    RunConfig c = base;
    detail::read_key(j, "subcommand", c.subcommand);
    detail::read_key(j, "theta", c.theta);
    detail::read_key(j, "family", c.family);
    detail::read_key(j, "N", c.N);
    detail::read_key(j, "bits", c.bits);
    detail::read_key(j, "depth", c.depth);
    detail::read_key(j, "M", c.M);
    detail::read_key(j, "radii", c.radii);
    detail::read_key(j, "out", c.out);
    detail::read_key(j, "seed", c.seed);
    detail::read_key(j, "samples", c.samples);
    detail::read_key(j, "window", c.window);
    detail::read_key(j, "d", c.d);
    detail::read_key(j, "m_max", c.m_max);
    detail::read_key(j, "count", c.count);
    detail::read_key(j, "burnin", c.burnin);
    detail::read_key(j, "points", c.points);
    detail::read_key(j, "max_flagged_fraction", c.max_flagged_fraction);
    return c;
}

inline RunConfig parse_config_text(const std::string& text, RunConfig base = {}) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("config parse error at " + detail::line_context(text, e.byte));
    }
    return config_from_json(j, std::move(base));
}

inline void validate(const RunConfig& c) {
    bool known = false;
    for (const auto& s : subcommands()) known |= s == c.subcommand;
    if (!known) throw ParseError("unknown subcommand '" + c.subcommand + "'");
    if (c.N < 0) throw ParseError("N must be nonnegative");
    if (c.bits < 2) throw ParseError("bits must be at least 2");
    if (c.depth < 1) throw ParseError("depth must be positive");
    if (c.M < 16) throw ParseError("M must be at least 16");
    if (c.samples < 1) throw ParseError("samples must be positive");
    if (!(c.window > 0.0 && c.window <= 1.0)) throw ParseError("window must lie in (0, 1]");
    if (c.m_max < 1) throw ParseError("m_max must be positive");
    if (c.points < 3) throw ParseError("points must be at least 3");
    if (!(c.max_flagged_fraction >= 0.0 && c.max_flagged_fraction <= 1.0))
        throw ParseError("max_flagged_fraction must lie in [0, 1]");
}

// ---------------------------------------------------------------------------
// families

inline bool family_is_polynomial(const std::string& desc) { return desc.rfind("conjugate:", 0) != 0 && desc != "pole"; }

inline int default_N(const RunConfig& c, const std::string& family) {
    if (c.N > 0) return c.N;
    return family_is_polynomial(family) ? kDefaultPolynomialN : kDefaultSeriesN;
}

/// quad | rotation | pole | cubic | unicritical:d | geyer:d | dstar:d | conjugate:mobius | conjugate:exp
inline GermSeries make_family(const std::string& desc, const Angle& theta, int N, long bits) {
    auto degree = [&](const std::string& prefix) {
        std::string tail = desc.substr(prefix.size());
        int d = 0;
        auto r = std::from_chars(tail.data(), tail.data() + tail.size(), d);
        if (r.ec != std::errc() || r.ptr != tail.data() + tail.size() || d < 2 || d > 64)
            throw ParseError("family '" + desc + "': degree must be an integer in [2, 64]");
        return d;
    };
    auto starts = [&](const char* p) { return desc.rfind(p, 0) == 0; };
    long b = germ_bits(bits);
    if (desc == "quad") return quad_germ(theta, b);
    if (desc == "rotation") return rotation_germ(theta, b);
    if (desc == "cubic") return cubic_germ(theta, b);
    if (desc == "pole") return pole_germ(theta, N, b);
    if (desc == "conjugate:mobius") return mobius_conjugate(theta, N, b);
    if (desc == "conjugate:exp") return exp_conjugate(theta, N, b);
    if (starts("unicritical:")) return unicritical_boundary_germ(degree("unicritical:"), theta, 0, b).germ;
    if (starts("geyer:")) return geyer_germ(degree("geyer:"), theta, b);
    if (starts("dstar:")) return dstar_germ(degree("dstar:"), theta, b);
    throw ParseError("unknown family '" + desc + "'");
}

// ---------------------------------------------------------------------------
// subcommands

namespace detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline std::vector<Angle> parse_thetas(const RunConfig& c, long bits = mp::kDefaultBits) {
    std::vector<Angle> out;
    for (const auto& s : c.theta) out.push_back(Angle::parse(s, bits));
    return out;
}

inline std::vector<Angle> thetas_or_golden(const RunConfig& c) {
    auto t = parse_thetas(c);
    if (t.empty()) t.push_back(Angle::parse("golden"));
    return t;
}

inline std::vector<Angle> thetas_or_sample(const RunConfig& c) {
    auto t = parse_thetas(c);
    if (t.empty()) t = random_quadratic_angles(c.samples, c.seed);
    return t;
}

inline void add_flag(ScanRow& row, const std::string& why) {
    row.flagged = true;
    row.diagnostics += row.diagnostics.empty() ? why : "; " + why;
}

}  // namespace detail

inline ScanReport run_brjuno(const RunConfig& c) {
    ScanReport rep;
    rep.kind = "brjuno";
    rep.extra_columns = {"B_tail", "abs_B_minus_Y", "depth_used", "certified"};
    for (const Angle& t : detail::thetas_or_golden(c)) {
        ScanRow row;
        row.theta = t.describe();
        row.family = "-";
        BrjunoValue Y = yoccoz_Y(t, c.depth);
        BrjunoValue B = brjuno_B(t, c.depth);
        row.Y = Y.value;
        row.Y_tail = Y.tail_bound;
        row.B = B.value;
        if (Y.infinite) detail::add_flag(row, "rational angle");
        if (Y.undecidable) detail::add_flag(row, "undecidable");
        double diff = Y.infinite ? detail::kNaN : std::abs(B.value - Y.value);
        row.extra = {B.tail_bound, diff, static_cast<double>(Y.depth_used), Y.certified ? 1.0 : 0.0};
        rep.rows.push_back(std::move(row));
    }
    rep.summary["rows"] = static_cast<double>(rep.rows.size());
    rep.summary["flagged"] = rep.flagged();
    return rep;
}

inline ScanRow radius_row(const RunConfig& c, const Angle& t, const std::string& family, int N) {
    ScanRow row;
    row.theta = t.describe();
    row.family = family;
    BrjunoValue Y = yoccoz_Y(t, c.depth);
    row.Y = Y.value;
    row.Y_tail = Y.tail_bound;
    if (Y.infinite) {
        detail::add_flag(row, "rational angle");
        row.extra.assign(5, detail::kNaN);
        return row;
    }
    row.B = brjuno_B(t, c.depth).value;
    RadiusOutcome ro = radius_of(make_family(family, t, N, c.bits), N, c.bits, c.window);
    row.flagged = ro.flagged;
    row.diagnostics = ro.diagnostics;
    row.log_R = ro.R.log_value;
    row.S = row.Y + row.log_R;
    row.uncertainty = ro.R.uncertainty;
    row.extra = {static_cast<double>(N), ro.R.value, ro.R.slope_value, ro.R.bend, ro.R.infinite ? 1.0 : 0.0};
    return row;
}

inline ScanReport run_radius(const RunConfig& c) {
    ScanReport rep;
    rep.kind = "radius";
    rep.extra_columns = {"N", "R", "R_slope", "bend", "infinite"};
    int N = default_N(c, c.family);
    for (const Angle& t : detail::thetas_or_golden(c)) rep.rows.push_back(radius_row(c, t, c.family, N));
    summarize_S(rep);
    return rep;
}

/// Coefficient dump of the first angle; the report holds its radius row.
inline ScanReport run_linearize(const RunConfig& c, LinearizationResult& L) {
    ScanReport rep;
    rep.kind = "linearize";
    rep.extra_columns = {"N", "R", "R_slope", "bend", "infinite"};
    Angle t = detail::thetas_or_golden(c).front();
    int N = default_N(c, c.family);
    L = linearize(make_family(c.family, t, N, c.bits), N, c.bits);
    rep.rows.push_back(radius_row(c, t, c.family, N));
    rep.summary["valid"] = L.valid;
    rep.summary["overflow"] = L.any_overflow() ? 1.0 : 0.0;
    return rep;
}

inline ScanReport run_capacity(const RunConfig& c) {
    ScanReport rep;
    rep.kind = "capacity";
    rep.extra_columns = {"R_capacity", "capacity_spread", "R_hadamard", "rel_diff"};
    int N = default_N(c, "quad");
    for (const Angle& t : detail::thetas_or_golden(c)) {
        ScanRow row = radius_row(c, t, "quad", N);
        double R_h = row.extra.size() > 1 ? row.extra[1] : detail::kNaN;
        CapacityEstimate cap = conformal_radius_capacity(t, c.count, c.burnin, c.points);
        row.extra = {cap.conformal_radius, cap.spread, R_h, std::abs(R_h - cap.conformal_radius) / cap.conformal_radius};
        rep.rows.push_back(std::move(row));
    }
    summarize_S(rep);
    return rep;
}

inline ScanReport run_scan_conjecture(const RunConfig& c) {
    ScanReport rep = conjecture_scan(detail::thetas_or_sample(c), default_N(c, "quad"), c.bits, c.depth, c.window);
    return rep;
}

inline ScanReport run_check_harmonic(const RunConfig& c) {
    std::string family = c.family == "quad" ? "cubic" : c.family;
    Angle t = detail::thetas_or_golden(c).front();
    int N = c.N > 0 ? c.N : 1024;
    HarmonicReport h = harmonicity_check(make_family(family, t, N, c.bits), c.radii, c.M, N, c.bits, c.window);
    ScanReport rep;
    rep.kind = "check-harmonic";
    rep.extra_columns = {"r", "average", "delta"};
    for (const auto& hr : h.rows) {
        ScanRow row;
        row.theta = h.theta;
        row.family = family;
        row.log_R = h.log_R_P;
        row.uncertainty = hr.uncertainty;
        row.extra = {hr.r, hr.average, hr.delta};
        if (std::abs(hr.delta) > hr.uncertainty) detail::add_flag(row, "delta beyond uncertainty");
        rep.rows.push_back(std::move(row));
    }
    rep.summary["log_R_P"] = h.log_R_P;
    rep.summary["max_abs_delta"] = h.max_abs_delta();
    rep.summary["flatness"] = h.flatness();
    rep.summary["flagged"] = rep.flagged();
    return rep;
}

inline ScanReport run_check_fatou(const RunConfig& c) {
    std::vector<std::string> families;
    if (c.family == "quad" || c.family == "all")
        families = {"rotation", "pole", "cubic"};
    else
        families = {c.family};
    Angle t = detail::thetas_or_golden(c).front();
    int N = c.N > 0 ? c.N : 1024;
    double r = c.radii.empty() ? 11.0 : c.radii.front();
    ScanReport rep;
    rep.kind = "check-fatou";
    rep.extra_columns = {"r", "average", "slack"};
    for (const auto& fam : families) {
        FatouReport f = fatou_check(make_family(fam, t, N, c.bits), r, c.M, N, c.bits, c.window);
        ScanRow row;
        row.theta = f.theta;
        row.family = fam;
        row.log_R = f.log_R_f;
        row.uncertainty = f.uncertainty;
        row.extra = {r, f.average, f.slack};
        if (!f.holds) detail::add_flag(row, "inequality violated");
        rep.rows.push_back(std::move(row));
    }
    rep.summary["flagged"] = rep.flagged();
    return rep;
}

inline ScanReport run_check_lemma(const RunConfig& c) {
    std::vector<long> ms;
    for (long m = 1; m <= c.m_max; ++m) ms.push_back(m);
    return lemma_scan(detail::thetas_or_sample(c), ms, c.depth);
}

inline ScanReport run_scan_dstar(const RunConfig& c) {
    return dstar_bounds_scan(c.d, detail::thetas_or_sample(c), default_N(c, "dstar:3"), c.bits, c.depth, c.window);
}

/// Residual for d = 2..8 and a negative control with multiplier angle d*theta.
inline ScanReport run_semiconj(const RunConfig& c) {
    ScanReport rep;
    rep.kind = "semiconj";
    rep.extra_columns = {"d", "N", "residual", "control"};
    int N = c.N > 0 ? c.N : 64;
    double worst = 0.0, weakest = std::numeric_limits<double>::infinity();
    for (const Angle& t : detail::thetas_or_golden(c)) {
        for (int d = 2; d <= 8; ++d) {
            ScanRow row;
            row.theta = t.describe();
            row.family = "dstar:" + std::to_string(d);
            double res = semiconjugacy_residual(d, t, N);
            double ctl = semiconjugacy_residual(d, t, N, mul_mod1(t, mpz_class(d)));
            row.extra = {static_cast<double>(d), static_cast<double>(N), res, ctl};
            worst = std::max(worst, res);
            weakest = std::min(weakest, ctl);
            rep.rows.push_back(std::move(row));
        }
    }
    rep.summary["max_residual"] = worst;
    rep.summary["min_control"] = weakest;
    return rep;
}

// ---------------------------------------------------------------------------
// driver

struct RunResult {
    ScanReport report;
    int status = 0;
};

inline RunResult execute(const RunConfig& c, LinearizationResult* coeffs = nullptr) {
    validate(c);
    RunResult r;
    const std::string& s = c.subcommand;
    if (s == "brjuno") r.report = run_brjuno(c);
    else if (s == "linearize") {
        LinearizationResult L;
        r.report = run_linearize(c, L);
        if (coeffs) *coeffs = std::move(L);
    } else if (s == "radius") r.report = run_radius(c);
    else if (s == "capacity") r.report = run_capacity(c);
    else if (s == "scan-conjecture") r.report = run_scan_conjecture(c);
    else if (s == "check-harmonic") r.report = run_check_harmonic(c);
    else if (s == "check-fatou") r.report = run_check_fatou(c);
    else if (s == "check-lemma") r.report = run_check_lemma(c);
    else if (s == "scan-dstar") r.report = run_scan_dstar(c);
    else r.report = run_semiconj(c);

    auto& p = r.report.provenance;
    p["config_hash"] = config_hash(to_json(c));
    p["N"] = std::to_string(c.N);
    p["bits"] = std::to_string(c.bits);
    p["depth"] = std::to_string(c.depth);
    std::size_t n = r.report.rows.size();
    if (n && static_cast<double>(r.report.flagged()) > c.max_flagged_fraction * static_cast<double>(n)) r.status = 1;
    return r;
}

/// Writes artifacts and returns the exit status. Diagnostics go to `err`.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        LinearizationResult L;
        RunResult r = execute(c, &L);
        nlohmann::json snap = to_json(c);
        if (c.out.empty()) {
            write_csv(out, r.report, snap);
        } else {
            std::ofstream csv(c.out + ".csv", std::ios::binary), js(c.out + ".json", std::ios::binary);
            if (!csv || !js) throw ParseError("cannot write to '" + c.out + "'");
            write_csv(csv, r.report, snap);
            write_json(js, r.report, snap);
            if (c.subcommand == "linearize") {
                std::ofstream cf(c.out + ".coeffs.csv", std::ios::binary);
                cf << "# linearize config=" << snap.dump() << '\n';
                cf << "# config_hash=" << config_hash(snap) << '\n';
                write_coefficients_csv(cf, L);
            }
        }
        if (r.status == 1)
            err << "flagged rows: " << r.report.flagged() << " of " << r.report.rows.size() << '\n';
        return r.status;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace siegel
