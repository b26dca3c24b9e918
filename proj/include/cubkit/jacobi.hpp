#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cubkit/numerics.hpp"

namespace cubkit {

/// Exponent pair (alpha, beta) of the Jacobi weight (1-t)^alpha (1+t)^beta.
struct JacobiParams {
    double alpha;
    double beta;

    JacobiParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > -1.0) || !(b > -1.0))
            throw std::invalid_argument("JacobiParams: alpha, beta > -1 required");
    }
};

/// Classical Jacobi polynomial P_n^{(a,b)}(t), normalized by P_n(1) = binom(n+a, n).
inline double jacobi_eval(int n, const JacobiParams& p, double t) {
    if (n < 0) throw std::invalid_argument("jacobi_eval: n >= 0 required");
    const double a = p.alpha, b = p.beta;
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double pc = 0.5 * ((a + b + 2.0) * t + (a - b));
    for (int k = 2; k <= n; ++k) {
        const double c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
        const double c2 = (2.0 * k + a + b - 1.0) * (a * a - b * b);
        const double c3 = (2.0 * k + a + b - 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b - 2.0);
        const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
        const double pn = ((c2 + c3 * t) * pc - c4 * pm1) / c1;
        pm1 = pc;
        pc = pn;
    }
    return pc;
}

/// d/dt P_n^{(a,b)}(t) = (n+a+b+1)/2 * P_{n-1}^{(a+1,b+1)}(t).
inline double jacobi_deriv(int n, const JacobiParams& p, double t) {
    if (n == 0) return 0.0;
    return 0.5 * (n + p.alpha + p.beta + 1.0) *
           jacobi_eval(n - 1, JacobiParams(p.alpha + 1.0, p.beta + 1.0), t);
}

/// L2 norm squared h_n = ∫ P_n^2 w* dt against the normalized weight w*_{a,b}.
inline double jacobi_norm_h(int n, const JacobiParams& p) {
    if (n < 0) throw std::invalid_argument("jacobi_norm_h: n >= 0 required");
    if (n == 0) return 1.0;
    const double a = p.alpha, b = p.beta;
    return std::exp(log_gamma(n + a + 1.0) + log_gamma(n + b + 1.0) + log_gamma(a + b + 2.0) -
                    std::log(2.0 * n + a + b + 1.0) - log_gamma(n + a + b + 1.0) -
                    log_gamma(n + 1.0) - log_gamma(a + 1.0) - log_gamma(b + 1.0));
}

/// Orthonormal Jacobi polynomial p_n = P_n / sqrt(h_n).
inline double jacobi_orthonormal(int n, const JacobiParams& p, double t) {
    return jacobi_eval(n, p, t) / std::sqrt(jacobi_norm_h(n, p));
}

/// Fills out[0..nmax] with p_0(t)..p_nmax(t), orthonormal against w*.
inline void jacobi_orthonormal_table(int nmax, const JacobiParams& p, double t,
                                     std::vector<double>& out) {
    out.resize(nmax + 1);
    const double a = p.alpha, b = p.beta;
    double pm1 = 1.0;
    double pc = (nmax >= 1) ? 0.5 * ((a + b + 2.0) * t + (a - b)) : 0.0;
    out[0] = 1.0;
    if (nmax >= 1) out[1] = pc / std::sqrt(jacobi_norm_h(1, p));
    for (int k = 2; k <= nmax; ++k) {
        const double c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
        const double c2 = (2.0 * k + a + b - 1.0) * (a * a - b * b);
        const double c3 = (2.0 * k + a + b - 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b - 2.0);
        const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
        const double pn = ((c2 + c3 * t) * pc - c4 * pm1) / c1;
        pm1 = pc;
        pc = pn;
        out[k] = pc / std::sqrt(jacobi_norm_h(k, p));
    }
}

/// Monic three-term recurrence coefficients for the normalized Jacobi measure:
/// pi_{k+1} = (t - a_k) pi_k - b_k pi_{k-1}.  b_0 is unused by convention.
inline void jacobi_recurrence(int n, const JacobiParams& p, std::vector<double>& acoef,
                              std::vector<double>& bcoef) {
    const double a = p.alpha, b = p.beta;
    acoef.assign(n, 0.0);
    bcoef.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        if (k == 0)
            acoef[k] = (b - a) / (a + b + 2.0);
        else
            acoef[k] = (b * b - a * a) / (s * (s + 2.0));
        if (k == 0)
            bcoef[k] = 1.0;  // mass of the normalized measure
        else if (k == 1)
            bcoef[k] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
        else
            bcoef[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                       (s * s * (s + 1.0) * (s - 1.0));
    }
}

enum class RuleKind1D { gauss, gauss_radau_at_plus1 };

/// 1-D quadrature rule against the normalized Jacobi weight w*_{a,b}.
struct QuadratureRule1D {
    std::vector<double> nodes;    // strictly increasing, in [-1,1]
    std::vector<double> weights;  // positive, summing to 1
    int exactness_degree = 0;
    RuleKind1D kind = RuleKind1D::gauss;
};

/// Gauss rule: nodes are the zeros of P_n^{(a,b)}, weights the normalized
/// Christoffel numbers.  Golub-Welsch eigendecomposition with a Newton polish.
inline QuadratureRule1D gauss_rule(int n, const JacobiParams& p) {
    if (n < 1) throw std::invalid_argument("gauss_rule: n >= 1 required");
    std::vector<double> ac, bc;
    jacobi_recurrence(n, p, ac, bc);
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(ac.data(), n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(bc[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_rule: tridiagonal eigensolver failed");

    QuadratureRule1D rule;
    rule.kind = RuleKind1D::gauss;
    rule.exactness_degree = 2 * n - 1;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    std::vector<double> ptab;
    for (int k = 0; k < n; ++k) {
        double t = es.eigenvalues()[k];
        // Newton refinement on P_n; residual target well below 1e-14.
        for (int iter = 0; iter < 8; ++iter) {
            const double f = jacobi_eval(n, p, t);
            const double df = jacobi_deriv(n, p, t);
            const double dt = f / df;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        rule.nodes[k] = t;
        jacobi_orthonormal_table(n - 1, p, t, ptab);
        double s = 0.0;
        for (double v : ptab) s += v * v;
        rule.weights[k] = 1.0 / s;  // reciprocal kernel diagonal
    }
    for (int k = 1; k < n; ++k)
        if (!(rule.nodes[k] > rule.nodes[k - 1]))
            throw std::runtime_error("gauss_rule: nodes not strictly increasing");
    return rule;
}

/// Closed form of the Gauss-Radau endpoint weight,
///   mu_0 = (b+1)_n / (binom(n+a+1, n) (a+b+2)_n),
/// valid for all a, b > -1.
inline double radau_endpoint_weight_closed(int n, const JacobiParams& p) {
    const double a = p.alpha, b = p.beta;
    return pochhammer(b + 1.0, n) / (binomial(n + a + 1.0, n) * pochhammer(a + b + 2.0, n));
}

/// Gauss-Radau rule with the fixed node +1: interior nodes are the zeros of
/// P_n^{(a+1,b)}, interior weights mu_k = 2(a+1)/(a+b+2) * lambda_k/(1-x_k),
/// endpoint weight from the closed form above.  Computing the endpoint as
/// 1 - sum(mu_k) instead loses relative accuracy once mu_0 is small (large
/// alpha); exactness on constants is preserved to ~1e-15 either way.
inline QuadratureRule1D gauss_radau_rule(int n, const JacobiParams& p) {
    if (n < 0) throw std::invalid_argument("gauss_radau_rule: n >= 0 required");
    QuadratureRule1D rule;
    rule.kind = RuleKind1D::gauss_radau_at_plus1;
    rule.exactness_degree = 2 * n;
    if (n == 0) {
        rule.nodes = {1.0};
        rule.weights = {1.0};
        return rule;
    }
    const QuadratureRule1D inner = gauss_rule(n, JacobiParams(p.alpha + 1.0, p.beta));
    const double fac = 2.0 * (p.alpha + 1.0) / (p.alpha + p.beta + 2.0);
    rule.nodes.resize(n + 1);
    rule.weights.resize(n + 1);
    for (int k = 0; k < n; ++k) {
        rule.nodes[k] = inner.nodes[k];
        rule.weights[k] = fac * inner.weights[k] / (1.0 - inner.nodes[k]);
    }
    rule.nodes[n] = 1.0;
    rule.weights[n] = radau_endpoint_weight_closed(n, p);
    return rule;
}

}  // namespace cubkit
