#pragma once

// Truncated power series over the scalar types of scalar.hpp. Series are
// dense vectors indexed by degree.

#include "siegel/errors.hpp"
#include "siegel/scalar.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace siegel {

template <class T>
using Series = std::vector<T>;

template <class T>
Series<T> zero_series(int N, long bits) {
    return Series<T>(static_cast<std::size_t>(N + 1), scalar_from<T>({0.0, 0.0}, bits));
}

/// a * b truncated to degree N, by the schoolbook double loop.
template <class T>
Series<T> mul_trunc(const Series<T>& a, const Series<T>& b, int N, long bits) {
    Series<T> c = zero_series<T>(N, bits);
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= N; ++i) {
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= N; ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

/// outer(inner(z)) to degree N: explicit powers inner^k, accumulated term by term.
template <class T>
Series<T> compose_oracle(const Series<T>& outer, const Series<T>& inner, int N, long bits) {
    if (!inner.empty() && !(to_complex(inner[0]) == std::complex<double>{}))
        throw Error("compose_oracle: inner series must vanish at 0");
    Series<T> out = zero_series<T>(N, bits);
    if (outer.empty()) return out;
    out[0] = outer[0];
    Series<T> power = zero_series<T>(N, bits);
    power[0] = scalar_from<T>({1.0, 0.0}, bits);
    for (std::size_t k = 1; k < outer.size() && static_cast<int>(k) <= N; ++k) {
        power = mul_trunc(power, inner, N, bits);
        for (int n = 0; n <= N; ++n) out[static_cast<std::size_t>(n)] += outer[k] * power[static_cast<std::size_t>(n)];
    }
    return out;
}

/// Compositional inverse g of h = z + h_2 z^2 + ..., h(g(w)) = w to degree N.
template <class T>
Series<T> series_reversion(const Series<T>& h, int N, long bits) {
    if (h.size() < 2) throw Error("series_reversion needs a linear term");
    if (std::abs(to_complex(h[1]) - std::complex<double>(1.0, 0.0)) > 1e-12)
        throw Error("series_reversion needs h'(0) = 1");
    auto coeff = [&](std::size_t k) { return k < h.size() ? h[k] : scalar_from<T>({0.0, 0.0}, bits); };
    // pow[k][n] = [w^n] g^k for k >= 1; g_n fixed by [w^n] sum_k h_k g^k = 0 for n >= 2.
    std::vector<Series<T>> pow(static_cast<std::size_t>(N + 1), zero_series<T>(N, bits));
    Series<T> g = zero_series<T>(N, bits);
    if (N >= 1) {
        g[1] = scalar_from<T>({1.0, 0.0}, bits);
        pow[1][1] = g[1];
    }
    for (int n = 2; n <= N; ++n) {
        auto un = static_cast<std::size_t>(n);
        // [w^n] g^k for k = 2..n uses g_1..g_{n-1} only.
        for (int k = 2; k <= n; ++k) {
            auto uk = static_cast<std::size_t>(k);
            T acc = scalar_from<T>({0.0, 0.0}, bits);
            for (int j = 1; j <= n - k + 1; ++j) acc += g[static_cast<std::size_t>(j)] * pow[uk - 1][un - static_cast<std::size_t>(j)];
            pow[uk][un] = acc;
        }
        T s = scalar_from<T>({0.0, 0.0}, bits);
        for (int k = 2; k <= n; ++k) s += coeff(static_cast<std::size_t>(k)) * pow[static_cast<std::size_t>(k)][un];
        g[un] = -s;
        pow[1][un] = g[un];
    }
    return g;
}

/// 1 / q for q(0) = 1, truncated to degree N.
template <class T>
Series<T> series_reciprocal(const Series<T>& q, int N, long bits) {
    if (q.empty() || std::abs(to_complex(q[0]) - std::complex<double>(1.0, 0.0)) > 1e-12)
        throw Error("series_reciprocal needs q(0) = 1");
    Series<T> r = zero_series<T>(N, bits);
    r[0] = scalar_from<T>({1.0, 0.0}, bits);
    for (int n = 1; n <= N; ++n) {
        T s = scalar_from<T>({0.0, 0.0}, bits);
        for (int k = 1; k <= n && static_cast<std::size_t>(k) < q.size(); ++k)
            s += q[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(n - k)];
        r[static_cast<std::size_t>(n)] = -s;
    }
    return r;
}

/// Largest |a_n - b_n| over degrees 0..N.
template <class T>
double max_abs_difference(const Series<T>& a, const Series<T>& b, int N) {
    double m = 0.0;
    for (int n = 0; n <= N; ++n) {
        auto un = static_cast<std::size_t>(n);
        std::complex<double> x = un < a.size() ? to_complex(a[un]) : std::complex<double>{};
        std::complex<double> y = un < b.size() ? to_complex(b[un]) : std::complex<double>{};
        m = std::max(m, std::abs(x - y));
    }
    return m;
}

}  // namespace siegel
