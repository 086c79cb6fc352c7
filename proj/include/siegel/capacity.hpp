#pragma once

// Conformal radius of the Siegel disk of P_theta from its boundary.
//
// The critical orbit of P_theta is sampled, inverted about the fixed point
// 0, and the logarithmic capacity of the inverted boundary is estimated by
// the transfinite diameter of greedy Leja points. The conformal radius of
// the disk is the reciprocal of that capacity.

#include "siegel/cfrac.hpp"
#include "siegel/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace siegel {

using cplx = std::complex<double>;

inline constexpr long kDefaultQuotientCap = 50;
inline constexpr double kMinSeparation = 1e-12;

struct BoundarySample {
    std::vector<cplx> points;
    std::string source;
    long burnin = 0;
};

struct CapacityEstimate {
    double transfinite_diameter = 0.0;
    double energy = 0.0;              // -(2/(n(n-1))) sum log|z_i - z_j|
    int n_points_used = 0;
    double conformal_radius = 0.0;
    double spread = 0.0;              // |log d_n - log d_(n/2)|
    std::string method = "capacity (heuristic oracle)";
};

inline void require_bounded_type(const Angle& theta, long cap) {
    Angle x = theta.frac();
    if (x.is_rational()) throw BoundedTypeRequired("rational angle");
    CFExpansion cf = cf_expand(x, kDefaultDepth, mp::kDefaultBits);
    for (const auto& a : cf.partial_quotients)
        if (a > cap) throw BoundedTypeRequired("partial quotient above " + std::to_string(cap));
    if (cf.precision_exhausted && cf.partial_quotients.size() < 16)
        throw BoundedTypeRequired("too few partial quotients determined");
}

/// Critical orbit of P_theta(z) = lambda z + z^2 starting at -lambda/2, first `burnin` points dropped.
inline BoundarySample siegel_boundary_sample(const Angle& theta, long count, long burnin,
                                             long quotient_cap = kDefaultQuotientCap) {
    if (count < 256) throw Error("boundary sample needs count >= 256");
    if (burnin < 0) throw Error("burnin must be nonnegative");
    require_bounded_type(theta, quotient_cap);
    mp::Real phi = theta.centered_residual(mpz_class(1), 64);
    auto [s, c] = mp::sin_cos_pi(phi * mp::Real(2L, 64));
    cplx lambda(c.to_double(), s.to_double());
    BoundarySample S;
    S.source = "critical-orbit:" + theta.describe();
    S.burnin = burnin;
    S.points.reserve(static_cast<std::size_t>(count));
    cplx z = -lambda / 2.0;
    for (long k = 0; k < burnin + count; ++k) {
        if (k >= burnin) S.points.push_back(z);
        z = z * (lambda + z);
        if (!(std::abs(z) <= 4.0)) throw OrbitEscaped(k + 1);
    }
    return S;
}

/// Points on |z - c| = rho, equally spaced.
inline BoundarySample circle_sample(cplx center, double rho, long count) {
    BoundarySample S;
    S.source = "circle";
    S.points.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
        S.points.push_back(center + rho * cplx(std::cos(t), std::sin(t)));
    }
    return S;
}

inline BoundarySample invert_about(const BoundarySample& S, cplx center) {
    BoundarySample out;
    out.source = S.source + "/inverted";
    out.burnin = S.burnin;
    out.points.reserve(S.points.size());
    for (const cplx& z : S.points) {
        cplx d = z - center;
        if (std::abs(d) < 1e-9) throw CenterOnBoundary();
        out.points.push_back(1.0 / d);
    }
    return out;
}

namespace detail {

inline double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

/// Indices of the convex hull vertices (monotone chain).
inline std::vector<std::size_t> hull_indices(const std::vector<cplx>& pts) {
    std::vector<std::size_t> idx(pts.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a].real() != pts[b].real()) return pts[a].real() < pts[b].real();
        if (pts[a].imag() != pts[b].imag()) return pts[a].imag() < pts[b].imag();
        return a < b;
    });
    if (idx.size() < 3) return idx;
    std::vector<std::size_t> h(2 * idx.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
        h[k++] = idx[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace detail

/// Two points at maximal distance, lowest indices first among ties.
inline std::pair<std::size_t, std::size_t> diameter_pair(const std::vector<cplx>& pts) {
    if (pts.size() < 2) throw DegenerateSample("fewer than two points");
    std::vector<std::size_t> h = detail::hull_indices(pts);
    double best = -1.0;
    std::pair<std::size_t, std::size_t> out{0, 0};
    for (std::size_t a = 0; a < h.size(); ++a) {
        for (std::size_t b = a + 1; b < h.size(); ++b) {
            std::size_t i = std::min(h[a], h[b]), j = std::max(h[a], h[b]);
            double d = std::norm(pts[i] - pts[j]);
            if (d > best || (d == best && std::make_pair(i, j) < out)) {
                best = d;
                out = {i, j};
            }
        }
    }
    if (best < kMinSeparation * kMinSeparation) throw DegenerateSample("all points coincide");
    // A duplicate of a hull vertex with a lower index wins the tie.
    for (std::size_t i = 0; i < out.first; ++i) {
        if (pts[i] == pts[out.first]) {
            out.first = i;
            break;
        }
    }
    for (std::size_t j = 0; j < out.second; ++j) {
        if (j != out.first && pts[j] == pts[out.second]) {
            out.second = j;
            break;
        }
    }
    if (out.first > out.second) std::swap(out.first, out.second);
    return out;
}

/// Greedy Leja selection of n points: diameter pair, then repeatedly the
/// candidate with the largest sum of log distances to the chosen points.
inline std::vector<cplx> leja_fekete(const BoundarySample& S, int n) {
    const auto& pts = S.points;
    if (n < 2) throw Error("leja selection needs n >= 2");
    if (static_cast<std::size_t>(n) > pts.size()) throw Error("leja selection: n exceeds sample size");
    auto [i0, j0] = diameter_pair(pts);
    std::vector<cplx> chosen{pts[i0], pts[j0]};
    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> acc(pts.size(), 0.0);
    auto absorb = [&](cplx c) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (acc[i] == ninf) continue;
            double d = std::abs(pts[i] - c);
            acc[i] = d < kMinSeparation ? ninf : acc[i] + std::log(d);
        }
    };
    absorb(chosen[0]);
    absorb(chosen[1]);
    while (static_cast<int>(chosen.size()) < n) {
        std::size_t best = pts.size();
        double bv = ninf;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (acc[i] > bv) {
                bv = acc[i];
                best = i;
            }
        }
        if (best == pts.size()) throw DegenerateSample("fewer distinct points than requested");
        chosen.push_back(pts[best]);
        absorb(pts[best]);
    }
    return chosen;
}

/// d_n = exp(2/(n(n-1)) sum_{i<j} log|z_i - z_j|) over the first n points.
inline CapacityEstimate transfinite_diameter(const std::vector<cplx>& z) {
    if (z.size() < 3) throw Error("transfinite diameter needs at least 3 points");
    auto log_dn = [&](std::size_t n) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double d = std::abs(z[i] - z[j]);
                if (d < kMinSeparation) throw DegenerateSample("coincident points");
                s += std::log(d);
            }
        }
        return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1));
    };
    CapacityEstimate c;
    c.n_points_used = static_cast<int>(z.size());
    double l = log_dn(z.size());
    c.transfinite_diameter = std::exp(l);
    c.energy = -l;
    c.conformal_radius = 1.0 / c.transfinite_diameter;
    if (z.size() >= 6) c.spread = std::abs(l - log_dn(z.size() / 2));
    return c;
}

/// Conformal radius about 0 of the domain bounded by the sampled curve.
inline CapacityEstimate capacity_of_boundary(const BoundarySample& S, int n) {
    BoundarySample inv = invert_about(S, cplx(0.0, 0.0));
    return transfinite_diameter(leja_fekete(inv, n));
}

inline CapacityEstimate conformal_radius_capacity(const Angle& theta, long count = 100000, long burnin = 1000,
                                                  int n = 1000, long quotient_cap = kDefaultQuotientCap) {
    return capacity_of_boundary(siegel_boundary_sample(theta, count, burnin, quotient_cap), n);
}

/// Symmetric Hausdorff distance, brute force.
inline double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    auto one_side = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
        double worst = 0.0;
        for (const cplx& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const cplx& q : y) best = std::min(best, std::norm(p - q));
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(one_side(a, b), one_side(b, a));
}

inline void write_sample_csv(std::ostream& os, const BoundarySample& S) {
    os << "re,im\n";
    char buf[64];
    for (const cplx& z : S.points) {
        auto r = std::to_chars(buf, buf + sizeof buf, z.real());
        os.write(buf, r.ptr - buf);
        os << ',';
        r = std::to_chars(buf, buf + sizeof buf, z.imag());
        os.write(buf, r.ptr - buf);
        os << '\n';
    }
}

inline BoundarySample read_sample_csv(std::istream& is, std::string source = "csv") {
    BoundarySample S;
    S.source = std::move(source);
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line == "re,im") continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("sample line " + std::to_string(lineno) + ": expected re,im");
        double re = 0, im = 0;
        auto r1 = std::from_chars(line.data(), line.data() + comma, re);
        auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), im);
        if (r1.ec != std::errc() || r2.ec != std::errc() || r2.ptr != line.data() + line.size())
            throw ParseError("sample line " + std::to_string(lineno) + ": bad number");
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError("sample line " + std::to_string(lineno) + ": non-finite point");
        S.points.emplace_back(re, im);
    }
    return S;
}

}  // namespace siegel
