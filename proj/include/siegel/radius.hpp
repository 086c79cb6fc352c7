#pragma once

// Radius of convergence of h from finitely many coefficients.
//
// Primary estimate: min over the window of |b_n|^(-1/(n-1)), i.e. the
// window maximum of the root test. The exponent 1/(n-1) (instead of 1/n)
// makes the estimate exactly covariant under z -> s z, since the conjugate
// germ has coefficients b_n s^(n-1).
//
// Secondary estimate: least-squares slope of log|b_n| against n - 1.
//
// Infinite radius is declared when every window root-test value is below
// 2^(-bits/4), or when log|b_n| bends down like -n log n (entire h): a fit
// c + s (n-1) + t n log n with t < -1/2 whose root-test radius keeps growing
// across the window.

#include "siegel/errors.hpp"
#include "siegel/linearize.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace siegel {

inline constexpr int kMinCoefficients = 64;
inline constexpr double kDefaultWindow = 0.5;

struct RadiusEstimate {
    double value = 0.0;          // R, +inf when infinite
    double log_value = 0.0;
    bool infinite = false;
    double uncertainty = 0.0;    // relative spread between the estimators
    double slope_value = 0.0;    // secondary estimate
    double bend = 0.0;           // fitted n log n coefficient
    std::string method = "hadamard-window-max";
    int first = 0, last = 0;     // window, inclusive
};

namespace detail {

/// Solves the 3x3 system M x = r by Gaussian elimination with partial pivoting.
inline bool solve3(double M[3][3], double r[3], double x[3]) {
    int idx[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
        int p = c;
        for (int i = c + 1; i < 3; ++i)
            if (std::abs(M[idx[i]][c]) > std::abs(M[idx[p]][c])) p = i;
        std::swap(idx[c], idx[p]);
        double piv = M[idx[c]][c];
        if (std::abs(piv) < 1e-300) return false;
        for (int i = c + 1; i < 3; ++i) {
            double f = M[idx[i]][c] / piv;
            for (int j = c; j < 3; ++j) M[idx[i]][j] -= f * M[idx[c]][j];
            r[idx[i]] -= f * r[idx[c]];
        }
    }
    for (int c = 2; c >= 0; --c) {
        double s = r[idx[c]];
        for (int j = c + 1; j < 3; ++j) s -= M[idx[c]][j] * x[j];
        x[c] = s / M[idx[c]][c];
    }
    return true;
}

inline double window_log_radius(const LinearizationResult& L, int lo, int hi) {
    double best = std::numeric_limits<double>::infinity();
    for (int n = std::max(lo, 2); n <= hi; ++n) {
        const XComplex& x = L.b[static_cast<std::size_t>(n)];
        if (x.is_zero()) continue;
        best = std::min(best, -x.log_abs() / (n - 1));
    }
    return best;
}

}  // namespace detail

inline RadiusEstimate hadamard_radius(const LinearizationResult& L, double window = kDefaultWindow) {
    if (L.valid < kMinCoefficients) throw TooFewCoefficients(L.valid);
    if (!(window > 0.0 && window <= 1.0)) throw Error("window must lie in (0, 1]");
    RadiusEstimate R;
    R.last = L.valid;
    R.first = std::max(2, L.valid - static_cast<int>(std::floor(window * L.valid)) + 1);

    std::vector<double> xs, ys;
    double max_root = -std::numeric_limits<double>::infinity();
    for (int n = R.first; n <= R.last; ++n) {
        const XComplex& x = L.b[static_cast<std::size_t>(n)];
        if (x.is_zero()) continue;
        double ly = x.log_abs();
        xs.push_back(n - 1.0);
        ys.push_back(ly);
        max_root = std::max(max_root, ly / (n - 1));
    }
    auto set_infinite = [&] {
        R.infinite = true;
        R.value = std::numeric_limits<double>::infinity();
        R.log_value = R.value;
        R.slope_value = R.value;
        R.uncertainty = 0.0;
    };
    if (xs.empty() || max_root < -(static_cast<double>(L.bits) / 4.0) * std::log(2.0)) {
        set_infinite();
        return R;
    }

    R.log_value = detail::window_log_radius(L, R.first, R.last);
    R.value = std::exp(R.log_value);

    // Linear fit.
    std::size_t m = xs.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxx > 0 ? sxy / sxx : 0.0;
    R.slope_value = std::exp(-slope);
    R.uncertainty = std::abs(1.0 - std::exp(-slope - R.log_value));

    // Curvature fit on centered variables.
    if (m >= 8) {
        double M[3][3] = {}, r[3] = {}, x[3] = {};
        for (std::size_t i = 0; i < m; ++i) {
            double n = xs[i] + 1.0;
            double v[3] = {1.0, xs[i] - mx, n * std::log(n) - (mx + 1.0) * std::log(mx + 1.0)};
            for (int a = 0; a < 3; ++a) {
                for (int c = 0; c < 3; ++c) M[a][c] += v[a] * v[c];
                r[a] += v[a] * ys[i];
            }
        }
        if (detail::solve3(M, r, x)) R.bend = x[2];
        int mid = (R.first + R.last) / 2;
        double early = detail::window_log_radius(L, R.first, mid);
        double late = detail::window_log_radius(L, mid + 1, R.last);
        if (R.bend < -0.5 && late > early + std::log(1.25)) set_infinite();
    }
    return R;
}

}  // namespace siegel
