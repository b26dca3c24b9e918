#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cubkit {

inline constexpr double pi = 3.14159265358979323846;

/// Sum of a span by pairwise recursion; deterministic and accurate for
/// the long accumulations used by the oracles.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

/// log of Gamma(x), x > 0.
inline double log_gamma(double x) { return std::lgamma(x); }

/// Pochhammer symbol (x)_n = x(x+1)...(x+n-1) for x > 0, via lgamma.
inline double pochhammer(double x, int n) {
    if (n == 0) return 1.0;
    return std::exp(log_gamma(x + n) - log_gamma(x));
}

/// Generalized binomial coefficient binom(x, n) = (x-n+1)_n / n!.
inline double binomial(double x, int n) {
    if (n == 0) return 1.0;
    return std::exp(log_gamma(x + 1) - log_gamma(x - n + 1) - log_gamma(n + 1.0));
}

/// arccos with clamping; inputs may drift just past [-1,1] by rounding.
inline double safe_acos(double t) {
    if (t >= 1.0) return 0.0;
    if (t <= -1.0) return pi;
    return std::acos(t);
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1,1].
/// Newton iteration on the Legendre recurrence; standard and self-contained.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        nodes[i] = -t;
        nodes[n - 1 - i] = t;
        const double w = 2.0 / ((1.0 - t * t) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

}  // namespace cubkit
