#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cubkit/basis.hpp"
#include "cubkit/cubature.hpp"
#include "cubkit/jacobi.hpp"
#include "cubkit/weight.hpp"

namespace cubkit {

/// Discrete norms hat_h_l = sum_k mu_k (1+x_k) [p_l^{(a,b+1)}(x_k)]^2 over the
/// Gauss-Radau rule for w_{a,b}, in closed form.  Constant in l below m; the
/// l = m value is what the modified-kernel coefficients require.
inline double hat_h(int l, int m, const JacobiParams& p) {
    if (l < 0 || l > m) throw std::invalid_argument("hat_h: 0 <= l <= m required");
    const double a = p.alpha, b = p.beta;
    if (l < m) return 2.0 * (b + 1.0) / (a + b + 2.0);
    return 2.0 * (b + 1.0) * (a + b + 2.0 * m + 2.0) / ((a + b + 2.0) * (b + m + 1.0));
}

/// Reproducing kernel of Pi^2_n in L2 of the normalized weight, by direct
/// summation over the orthonormal basis.
inline double kernel_K(const WeightSpec& spec, int n, double x1, double y1, double x2,
                       double y2) {
    if (n < 0) throw std::invalid_argument("kernel_K: n >= 0 required");
    BasisEvaluator ev(spec, n);
    BasisEvaluator::Workspace ws;
    const int nb = BasisEvaluator::basis_size(n);
    std::vector<double> v1(nb), v2(nb);
    ev.eval_all(n, x1, y1, v1, ws);
    ev.eval_all(n, x2, y2, v2, ws);
    double tot = 0.0;
    for (int i = 0; i < nb; ++i) tot += v1[i] * v2[i];
    return tot;
}

/// Lagrange interpolation on the nodes of the sigma = -1/2 near-minimal rule:
/// L_n f = sum f(node) lambda_node K*(., node) with the modified kernel
/// K*_{2m+1} = K_{2m} + sum_k b_k 1Q_{k,2m+1}(x) 1Q_{k,2m+1}(y),
/// b_k = 1 / ([a^{(0,1)}]^2 hat_h_k hat_h_m).
class InterpolationOperator {
  public:
    InterpolationOperator(const WeightSpec& spec, int m)
        : spec_(spec), m_(m), rule_(near_minimal_rule(spec, m)), ev_(spec, 2 * m + 1) {
        if (spec.sigma != Sigma::minus_half)
            throw std::invalid_argument("InterpolationOperator: sigma = -1/2 only");
        hat_.resize(m + 1);
        b_.resize(m + 1);
        const double a01 = normalization_ratio(0, 1, spec);
        for (int k = 0; k <= m; ++k) hat_[k] = hat_h(k, m, spec.jacobi());
        for (int k = 0; k <= m; ++k) b_[k] = 1.0 / (a01 * a01 * hat_[k] * hat_[m]);
        const int nb = BasisEvaluator::basis_size(2 * m + 1);
        coeff_.assign(nb, 1.0);
        const int off = BasisEvaluator::degree_offset(2 * m + 1);
        const int nq1 = BasisEvaluator::q1_count(2 * m + 1);
        for (int i = off; i < nb; ++i) coeff_[i] = 0.0;
        for (int k = 0; k < nq1; ++k) coeff_[off + k] = b_[k];

        // node matrix, rows pre-scaled by the kernel coefficients
        const int N = static_cast<int>(rule_.nodes.size());
        node_matrix_.resize(N, nb);
        BasisEvaluator::Workspace ws;
        std::vector<double> vals(nb);
        for (int p = 0; p < N; ++p) {
            ev_.eval_all(2 * m + 1, rule_.nodes[p].x, rule_.nodes[p].y, vals, ws);
            for (int i = 0; i < nb; ++i) node_matrix_(p, i) = coeff_[i] * vals[i];
        }
    }

    const WeightSpec& spec() const { return spec_; }
    int m() const { return m_; }
    const CubatureRule2D& rule() const { return rule_; }
    const std::vector<double>& hat_constants() const { return hat_; }
    const std::vector<double>& b_constants() const { return b_; }
    const BasisEvaluator& basis() const { return ev_; }
    int node_count() const { return static_cast<int>(rule_.nodes.size()); }

    /// Modified kernel K*_{2m+1} at two arbitrary points.
    double kernel_star(double x1, double y1, double x2, double y2) const {
        const int nb = BasisEvaluator::basis_size(2 * m_ + 1);
        BasisEvaluator::Workspace ws;
        std::vector<double> v1(nb), v2(nb);
        ev_.eval_all(2 * m_ + 1, x1, y1, v1, ws);
        ev_.eval_all(2 * m_ + 1, x2, y2, v2, ws);
        double tot = 0.0;
        for (int i = 0; i < nb; ++i) tot += coeff_[i] * v1[i] * v2[i];
        return tot;
    }

    /// K*(point, node_p) for every node at once.
    Eigen::VectorXd kernel_star_at_nodes(double x, double y) const {
        const int nb = BasisEvaluator::basis_size(2 * m_ + 1);
        BasisEvaluator::Workspace ws;
        Eigen::VectorXd v(nb);
        std::vector<double> vals(nb);
        ev_.eval_all(2 * m_ + 1, x, y, vals, ws);
        for (int i = 0; i < nb; ++i) v[i] = vals[i];
        return node_matrix_ * v;
    }

    /// Fundamental polynomial of one node: lambda_node K*(., node).
    double fundamental(int node_index, double x, double y) const {
        const auto& nd = rule_.nodes.at(node_index);
        return nd.weight * kernel_star(x, y, nd.x, nd.y);
    }

    double interpolate(std::span<const double> samples, double x, double y) const {
        if (samples.size() != rule_.nodes.size())
            throw std::invalid_argument("interpolate: sample/node count mismatch");
        const Eigen::VectorXd kv = kernel_star_at_nodes(x, y);
        std::vector<double> terms(rule_.nodes.size());
        for (std::size_t p = 0; p < rule_.nodes.size(); ++p)
            terms[p] = samples[p] * rule_.nodes[p].weight * kv[static_cast<int>(p)];
        return pairwise_sum(terms);
    }

    std::vector<double> sample(const std::function<double(double, double)>& f) const {
        std::vector<double> s(rule_.nodes.size());
        for (std::size_t p = 0; p < rule_.nodes.size(); ++p)
            s[p] = f(rule_.nodes[p].x, rule_.nodes[p].y);
        return s;
    }

    /// Integrating the interpolant recovers the cubature sum exactly, so this
    /// is implemented as that sum.
    double integrate(std::span<const double> samples) const {
        if (samples.size() != rule_.nodes.size())
            throw std::invalid_argument("integrate: sample/node count mismatch");
        std::vector<double> terms(rule_.nodes.size());
        for (std::size_t p = 0; p < rule_.nodes.size(); ++p)
            terms[p] = rule_.nodes[p].weight * samples[p];
        return pairwise_sum(terms);
    }

    /// Lower bound of the Lebesgue constant over a G x G Chebyshev grid:
    /// max_x sum_node |lambda_node K*(x, node)|.
    double lebesgue_constant(int grid) const {
        if (grid < 2) throw std::invalid_argument("lebesgue_constant: grid >= 2 required");
        const int nb = BasisEvaluator::basis_size(2 * m_ + 1);
        const int N = node_count();
        std::vector<double> gx(grid);
        for (int i = 0; i < grid; ++i) gx[i] = std::cos((2.0 * i + 1.0) * pi / (2.0 * grid));
        Eigen::VectorXd lambda(N);
        for (int p = 0; p < N; ++p) lambda[p] = rule_.nodes[p].weight;

        double best = 0.0;
        BasisEvaluator::Workspace ws;
        std::vector<double> vals(nb);
        Eigen::MatrixXd block(grid, nb);  // one grid row of points at a time
        for (int i = 0; i < grid; ++i) {
            for (int j = 0; j < grid; ++j) {
                ev_.eval_all(2 * m_ + 1, gx[i], gx[j], vals, ws);
                for (int t = 0; t < nb; ++t) block(j, t) = vals[t];
            }
            const Eigen::MatrixXd kst = block * node_matrix_.transpose();  // grid x N
            const Eigen::VectorXd sums = kst.cwiseAbs() * lambda;
            best = std::max(best, sums.maxCoeff());
        }
        return best;
    }

  private:
    WeightSpec spec_;
    int m_;
    CubatureRule2D rule_;
    BasisEvaluator ev_;
    std::vector<double> hat_;
    std::vector<double> b_;
    std::vector<double> coeff_;
    Eigen::MatrixXd node_matrix_;
};

/// The split form of the modified kernel: K_{2m} plus a correction assembled
/// from the (a, b+1) kernels on the parabolic domain.  Equivalent to the
/// summation form; kept as an independent evaluation route.
inline double kernel_K_star_split(const WeightSpec& spec, int m, double x1, double y1, double x2,
                                  double y2) {
    if (spec.sigma != Sigma::minus_half)
        throw std::invalid_argument("kernel_K_star_split: sigma = -1/2 only");
    const double h0 = hat_h(0, m, spec.jacobi());
    const double hm = hat_h(m, m, spec.jacobi());
    const WeightSpec shifted(spec.alpha, spec.beta + 1.0, Sigma::minus_half);
    detail::JacobiFamily fam(shifted.jacobi(), m + 1);
    auto ptab = [&](double x, double y, std::vector<double>& tx, std::vector<double>& ty) {
        const double th = safe_acos(x), ph = safe_acos(y);
        fam.orthonormal_table(m + 1, std::cos(th - ph), tx);
        fam.orthonormal_table(m + 1, std::cos(th + ph), ty);
    };
    std::vector<double> t1x, t1y, t2x, t2y;
    ptab(x1, y1, t1x, t1y);
    ptab(x2, y2, t2x, t2y);
    auto ptilde = [](const std::vector<double>& tx, const std::vector<double>& ty, int k, int n) {
        if (k == n) return tx[n] * ty[n];
        return (tx[n] * ty[k] + tx[k] * ty[n]) / std::sqrt(2.0);
    };
    // top-degree slice K_m - K_{m-1} of the shifted kernel
    double slice = 0.0;
    for (int k = 0; k <= m; ++k) slice += ptilde(t1x, t1y, k, m) * ptilde(t2x, t2y, k, m);
    const double pm = ptilde(t1x, t1y, m, m) * ptilde(t2x, t2y, m, m);
    const double corr = ((x1 + y1) * (x2 + y2) / (h0 * hm)) * (slice + (h0 / hm - 1.0) * pm);
    return kernel_K(spec, 2 * m, x1, y1, x2, y2) + corr;
}

}  // namespace cubkit
