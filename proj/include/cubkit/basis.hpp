#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "cubkit/jacobi.hpp"
#include "cubkit/numerics.hpp"
#include "cubkit/weight.hpp"

namespace cubkit {

// Orthogonal bases on the square for the weights selected by WeightSpec.
// Everything here is normalized so that the bases are exactly orthonormal
// against the self-normalized weight; in particular the degree-0 element is
// the constant 1.

namespace detail {

/// Variance of t under the normalized Jacobi weight w*_{a,b}; equals the
/// first off-diagonal recurrence coefficient b_1.
inline double jacobi_variance(const JacobiParams& p) {
    const double a = p.alpha, b = p.beta;
    return 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
}

/// log of ∫ (1-t)^a (1+t)^b dt.
inline double log_jacobi_mass(const JacobiParams& p) {
    const double a = p.alpha, b = p.beta;
    return (a + b + 1.0) * std::log(2.0) + log_gamma(a + 1.0) + log_gamma(b + 1.0) -
           log_gamma(a + b + 2.0);
}

/// log of the (unnormalized) total mass of the sigma=+1/2 weight, expressed
/// through 1-D quantities: the square integral of |x-y|^{2a+1}|x+y|^{2b+1}
/// sqrt((1-x^2)(1-y^2)) equals (∫w_{a,b})^2 Var_{a,b}(t) / 2 up to a constant
/// common to all (a,b), which cancels in the ratios used below.
inline double log_plus_half_mass(const JacobiParams& p) {
    return 2.0 * log_jacobi_mass(p) + std::log(0.5 * jacobi_variance(p));
}

/// Cached classical-recurrence coefficients and norms for one parameter pair.
struct JacobiFamily {
    JacobiParams params;
    std::vector<double> coef_e, coef_f, coef_g;  // P_k = (e_k + f_k t) P_{k-1} - g_k P_{k-2}
    std::vector<double> inv_sqrt_h;

    explicit JacobiFamily(const JacobiParams& p, int nmax) : params(p) { extend(nmax); }

    void extend(int nmax) {
        const double a = params.alpha, b = params.beta;
        const int old = static_cast<int>(inv_sqrt_h.size()) - 1;
        if (nmax <= old) return;
        coef_e.resize(nmax + 1);
        coef_f.resize(nmax + 1);
        coef_g.resize(nmax + 1);
        inv_sqrt_h.resize(nmax + 1);
        for (int k = std::max(old + 1, 0); k <= nmax; ++k) {
            inv_sqrt_h[k] = 1.0 / std::sqrt(jacobi_norm_h(k, params));
            if (k >= 2) {
                const double c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
                coef_e[k] = (2.0 * k + a + b - 1.0) * (a * a - b * b) / c1;
                coef_f[k] = (2.0 * k + a + b - 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b - 2.0) / c1;
                coef_g[k] = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b) / c1;
            }
        }
    }

    /// Classical values P_0..P_nmax at t.
    void classical_table(int nmax, double t, std::vector<double>& out) const {
        out.resize(nmax + 1);
        out[0] = 1.0;
        if (nmax == 0) return;
        const double a = params.alpha, b = params.beta;
        out[1] = 0.5 * ((a + b + 2.0) * t + (a - b));
        for (int k = 2; k <= nmax; ++k)
            out[k] = (coef_e[k] + coef_f[k] * t) * out[k - 1] - coef_g[k] * out[k - 2];
    }

    /// Orthonormal values p_0..p_nmax at t.
    void orthonormal_table(int nmax, double t, std::vector<double>& out) const {
        classical_table(nmax, t, out);
        for (int k = 0; k <= nmax; ++k) out[k] *= inv_sqrt_h[k];
    }

    double orthonormal_deriv(int n, double t) const {
        return jacobi_deriv(n, params, t) * inv_sqrt_h[n];
    }
};

}  // namespace detail

/// a^{(i,j)} = sqrt(b_{a+i,b+j,sigma} / b_{a,b,sigma}): ratio of normalization
/// constants between parameter-shifted weights.  Closed forms for sigma=-1/2;
/// for sigma=+1/2 computed from exact 1-D mass/variance ratios.
inline double normalization_ratio(int i, int j, const WeightSpec& spec) {
    const double a = spec.alpha, b = spec.beta;
    if (spec.sigma == Sigma::minus_half) {
        if (i == 0 && j == 1) return (a + b + 2.0) / (2.0 * (b + 1.0));
        if (i == 1 && j == 0) return (a + b + 2.0) / (2.0 * (a + 1.0));
        if (i == 1 && j == 1) return (a + b + 2.0) * (a + b + 3.0) / (4.0 * (a + 1.0) * (b + 1.0));
        throw std::invalid_argument("normalization_ratio: unsupported shift");
    }
    const double lt = detail::log_plus_half_mass(JacobiParams(a, b));
    const double ls = detail::log_plus_half_mass(JacobiParams(a + i, b + j));
    return std::exp(0.5 * (lt - ls));
}

enum class QFamily { one, two };

/// Index card for one orthonormal basis element of V_n.
struct SquareBasis {
    WeightSpec spec;
    QFamily family;
    int k;
    int degree;

    SquareBasis(const WeightSpec& s, QFamily f, int k_, int degree_)
        : spec(s), family(f), k(k_), degree(degree_) {
        const int n = degree / 2;
        int kmax;
        if (degree % 2 == 0)
            kmax = (f == QFamily::one) ? n : n - 1;
        else
            kmax = n;  // both families run 0..n at odd degree 2n+1
        if (k < 0 || k > kmax) throw std::invalid_argument("SquareBasis: index out of range");
    }
};

/// Evaluator for all basis elements of a fixed WeightSpec.  Immutable after
/// construction; evaluation scratch is passed in by the caller, so a single
/// instance is safe to share across threads.
class BasisEvaluator {
  public:
    struct Workspace {
        std::vector<double> tx[4], ty[4];
    };

    BasisEvaluator(const WeightSpec& spec, int max_total_degree)
        : spec_(spec),
          max_degree_(max_total_degree),
          f00_(JacobiParams(spec.alpha, spec.beta), half_max() + 2),
          f01_(JacobiParams(spec.alpha, spec.beta + 1.0), half_max() + 2),
          f10_(JacobiParams(spec.alpha + 1.0, spec.beta), half_max() + 2),
          f11_(JacobiParams(spec.alpha + 1.0, spec.beta + 1.0), half_max() + 2),
          a01_(normalization_ratio(0, 1, spec)),
          a10_(normalization_ratio(1, 0, spec)),
          a11_(normalization_ratio(1, 1, spec)) {}

    const WeightSpec& spec() const { return spec_; }
    int max_degree() const { return max_degree_; }

    static int basis_size(int degree) { return (degree + 1) * (degree + 2) / 2; }
    static int degree_offset(int degree) { return degree * (degree + 1) / 2; }

    /// Count of 1Q elements at a given total degree (2Q elements follow them).
    static int q1_count(int degree) { return degree / 2 + 1; }

    /// Values of every basis element of degree <= degree at (x, y), ordered by
    /// degree, 1Q family first within each degree.
    void eval_all(int degree, double x, double y, std::span<double> out, Workspace& ws) const {
        if (degree > max_degree_) throw std::invalid_argument("BasisEvaluator: degree too large");
        if (static_cast<int>(out.size()) < basis_size(degree))
            throw std::invalid_argument("BasisEvaluator: output span too small");
        const double th = safe_acos(x), ph = safe_acos(y);
        const double X = std::cos(th - ph), Y = std::cos(th + ph);
        const int nh = degree / 2 + 1;
        const detail::JacobiFamily* fams[4] = {&f00_, &f01_, &f10_, &f11_};
        for (int f = 0; f < 4; ++f) {
            fams[f]->orthonormal_table(nh + 1, X, ws.tx[f]);
            fams[f]->orthonormal_table(nh + 1, Y, ws.ty[f]);
        }
        const double sum = x + y, dif = x - y, sqdif = x * x - y * y;
        std::size_t idx = 0;
        for (int n2 = 0; n2 <= degree; ++n2) {
            if (n2 % 2 == 0) {
                const int n = n2 / 2;
                for (int k = 0; k <= n; ++k)
                    out[idx++] = eval_p(f00_, ws.tx[0], ws.ty[0], k, n, X, Y);
                for (int k = 0; k + 1 <= n; ++k)
                    out[idx++] = a11_ * sqdif * eval_p(f11_, ws.tx[3], ws.ty[3], k, n - 1, X, Y);
            } else {
                const int n = n2 / 2;
                for (int k = 0; k <= n; ++k)
                    out[idx++] = a01_ * sum * eval_p(f01_, ws.tx[1], ws.ty[1], k, n, X, Y);
                for (int k = 0; k <= n; ++k)
                    out[idx++] = a10_ * dif * eval_p(f10_, ws.tx[2], ws.ty[2], k, n, X, Y);
            }
        }
    }

    double eval(const SquareBasis& b, double x, double y) const {
        Workspace ws;
        std::vector<double> vals(basis_size(b.degree));
        eval_all(b.degree, x, y, vals, ws);
        const int off = degree_offset(b.degree);
        const int shift = (b.family == QFamily::one) ? 0 : q1_count(b.degree);
        return vals[off + shift + b.k];
    }

  private:
    int half_max() const { return max_degree_ / 2 + 1; }

    /// Orthonormalized P_{k,n}(u,v) through precomputed tables at the root
    /// pair (X, Y) with u = X+Y, v = XY.
    double eval_p(const detail::JacobiFamily& fam, const std::vector<double>& tx,
                  const std::vector<double>& ty, int k, int n, double X, double Y) const {
        if (spec_.sigma == Sigma::minus_half) {
            if (k == n) return tx[n] * ty[n];
            return (tx[n] * ty[k] + tx[k] * ty[n]) / std::sqrt(2.0);
        }
        const double gamma = std::sqrt(detail::jacobi_variance(fam.params));
        const double den = X - Y;
        if (std::abs(den) < 1e-8) {
            // confluent divided difference through the derivative of p_{n+1}
            const double d1 = fam.orthonormal_deriv(n + 1, X);
            const double d0 = fam.orthonormal_deriv(k, X);
            return gamma * (d1 * tx[k] - tx[n + 1] * d0);
        }
        return gamma * (tx[n + 1] * ty[k] - ty[n + 1] * tx[k]) / den;
    }

    WeightSpec spec_;
    int max_degree_;
    detail::JacobiFamily f00_, f01_, f10_, f11_;
    double a01_, a10_, a11_;
};

/// P_{k,n}^{a,b,sigma}(2xy, x^2+y^2-1) at a point of the square.
inline double basis_P(const WeightSpec& spec, int k, int n, double x, double y) {
    if (k < 0 || k > n) throw std::invalid_argument("basis_P: 0 <= k <= n required");
    detail::JacobiFamily fam(spec.jacobi(), n + 1);
    std::vector<double> tx, ty;
    const double th = safe_acos(x), ph = safe_acos(y);
    const double X = std::cos(th - ph), Y = std::cos(th + ph);
    fam.orthonormal_table(n + 1, X, tx);
    fam.orthonormal_table(n + 1, Y, ty);
    if (spec.sigma == Sigma::minus_half) {
        if (k == n) return tx[n] * ty[n];
        return (tx[n] * ty[k] + tx[k] * ty[n]) / std::sqrt(2.0);
    }
    const double gamma = std::sqrt(detail::jacobi_variance(fam.params));
    const double den = X - Y;
    if (std::abs(den) < 1e-8)
        return gamma * (fam.orthonormal_deriv(n + 1, X) * tx[k] -
                        tx[n + 1] * fam.orthonormal_deriv(k, X));
    return gamma * (tx[n + 1] * ty[k] - ty[n + 1] * tx[k]) / den;
}

/// Same polynomial evaluated at a point (u,v) of the parabolic domain.
inline double basis_P_omega(const WeightSpec& spec, int k, int n, double u, double v) {
    const double disc = std::max(u * u - 4.0 * v, 0.0);
    const double root = std::sqrt(disc);
    const double X = 0.5 * (u + root), Y = 0.5 * (u - root);
    // (x, y) on the square mapping to this (u, v): cos of half-angle combos
    const double th = 0.5 * (safe_acos(Y) + safe_acos(X));
    const double ph = 0.5 * (safe_acos(Y) - safe_acos(X));
    return basis_P(spec, k, n, std::cos(th), std::cos(ph));
}

/// Value of one orthonormal basis element 1Q/2Q at a point of the square.
inline double basis_Q(const WeightSpec& spec, QFamily family, int k, int degree, double x,
                      double y) {
    SquareBasis b(spec, family, k, degree);
    BasisEvaluator ev(spec, degree);
    return ev.eval(b, x, y);
}

}  // namespace cubkit
