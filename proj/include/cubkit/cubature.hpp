#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubkit/basis.hpp"
#include "cubkit/jacobi.hpp"
#include "cubkit/numerics.hpp"
#include "cubkit/weight.hpp"

namespace cubkit {

/// Thrown when a rule construction cannot meet its certificate.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Moeller lower bound N_min(n) = n(n+1)/2 + floor(n/2) on the node count of
/// a cubature rule of degree 2n-1 for a centrally symmetric weight.
inline long long n_min(long long n) {
    if (n < 1) throw std::invalid_argument("n_min: n >= 1 required");
    return n * (n + 1) / 2 + n / 2;
}

/// Angles 0 = theta_0 < theta_1 < ... < theta_m < pi with cos(theta_k) the
/// zeros of P_m^{(a+1,b)}; the backbone of every rule in this library.
struct ThetaGrid {
    int m;
    JacobiParams params;          // the (alpha, beta) of the weight, not shifted
    std::vector<double> thetas;   // ascending, thetas[0] == 0
    std::vector<double> radau_weights;  // mu_k matching thetas (mu_0 = endpoint weight)
};

inline ThetaGrid theta_grid(int m, const JacobiParams& p) {
    if (m < 0) throw std::invalid_argument("theta_grid: m >= 0 required");
    ThetaGrid grid{m, p, {}, {}};
    grid.thetas.resize(m + 1);
    grid.radau_weights.resize(m + 1);
    grid.thetas[0] = 0.0;
    const QuadratureRule1D radau = gauss_radau_rule(m, p);
    grid.radau_weights[0] = radau.weights[m];  // node +1 <-> theta = 0
    for (int k = 1; k <= m; ++k) {
        // radau nodes ascend; theta = arccos reverses the order
        grid.thetas[k] = safe_acos(radau.nodes[m - k]);
        grid.radau_weights[k] = radau.weights[m - k];
    }
    return grid;
}

enum class RuleKind2D { near_minimal, minimal };

struct CubatureNode {
    double x;
    double y;
    double weight;
    int j;      // orbit indices; for diagonal nodes of minimal rules j == k is
    int k;      // the index into the sorted diagonal-zero list and orbit == 0
    int orbit;  // 1:(s,t) 2:(t,s) 3:(-s,-t) 4:(-t,-s); 0: diagonal node
};

struct CubatureRule2D {
    WeightSpec spec;
    int m;
    RuleKind2D kind;
    int degree;  // claimed exactness
    std::vector<CubatureNode> nodes;
    std::optional<double> solve_residual;  // set for minimal rules

    double weight_sum() const {
        std::vector<double> w;
        w.reserve(nodes.size());
        for (const auto& n : nodes) w.push_back(n.weight);
        return pairwise_sum(w);
    }

    double apply(const std::function<double(double, double)>& f) const {
        std::vector<double> terms;
        terms.reserve(nodes.size());
        for (const auto& n : nodes) terms.push_back(n.weight * f(n.x, n.y));
        return pairwise_sum(terms);
    }
};

/// Near-minimal rule of Gauss-Radau product type.  For sigma = -1/2 the rule
/// has 2(m+1)^2 nodes and degree 4m+1.  For sigma = +1/2 the (cos t_j -
/// cos t_k)^2 factor removes the j = k orbits, leaving 2m^2 nodes; its degree
/// is the empirically verified 4m-3.
inline CubatureRule2D near_minimal_rule(const WeightSpec& spec, int m) {
    if (m < 0) throw std::invalid_argument("near_minimal_rule: m >= 0 required");
    const bool plus = spec.sigma == Sigma::plus_half;
    if (plus && m < 1)
        throw std::invalid_argument("near_minimal_rule: sigma=+1/2 requires m >= 1");
    const ThetaGrid grid = theta_grid(m, spec.jacobi());
    CubatureRule2D rule{spec, m, RuleKind2D::near_minimal, plus ? 4 * m - 3 : 4 * m + 1, {}, {}};
    for (int k = 0; k <= m; ++k) {
        for (int j = 0; j <= k; ++j) {
            const double s = std::cos(0.5 * (grid.thetas[j] - grid.thetas[k]));
            const double t = std::cos(0.5 * (grid.thetas[j] + grid.thetas[k]));
            double w = 0.5 * grid.radau_weights[j] * grid.radau_weights[k];
            if (j == k) w *= 0.5;
            if (plus) {
                if (j == k) continue;  // zero weight
                const double d = std::cos(grid.thetas[j]) - std::cos(grid.thetas[k]);
                w *= d * d;
            }
            if (j == 0 && k == 0) {
                // s = t = 1: orbits 1/2 and 3/4 coincide pairwise
                rule.nodes.push_back({1.0, 1.0, 2.0 * w, j, k, 1});
                rule.nodes.push_back({-1.0, -1.0, 2.0 * w, j, k, 3});
            } else if (j == 0) {
                // s = t: same pairwise merge
                rule.nodes.push_back({s, s, 2.0 * w, j, k, 1});
                rule.nodes.push_back({-s, -s, 2.0 * w, j, k, 3});
            } else {
                rule.nodes.push_back({s, t, w, j, k, 1});
                rule.nodes.push_back({t, s, w, j, k, 2});
                rule.nodes.push_back({-s, -t, w, j, k, 3});
                rule.nodes.push_back({-t, -s, w, j, k, 4});
            }
        }
    }
    if (plus) {
        // self-normalize; NearMin+ is stated without its normalizing constant
        double total = rule.weight_sum();
        for (auto& n : rule.nodes) n.weight /= total;
    }
    const std::size_t expected =
        plus ? 2u * m * m : 2u * (m + 1) * (m + 1);
    if (rule.nodes.size() != expected)
        throw construction_error("near_minimal_rule: node count mismatch");
    for (const auto& n : rule.nodes)
        if (!(n.weight > 0.0)) throw construction_error("near_minimal_rule: nonpositive weight");
    if (std::abs(rule.weight_sum() - 1.0) > 1e-12)
        throw construction_error("near_minimal_rule: weights do not sum to 1");
    return rule;
}

/// The 2m+1 diagonal zeros: 0 together with +-sqrt((1+s)/2) over the m roots
/// s of  p_m^{(a,b+1)}(1) p_m^{(a+1,b)}(s) + p_m^{(a,b+1)}(s) p_m^{(a+1,b)}(1).
/// The combination is quasi-orthogonal of order one for (a+1, b+1), so its
/// roots are eigenvalues of the Jacobi matrix with a rank-one corner shift;
/// a Newton pass then polishes them.
inline std::vector<double> diagonal_zeros(int m, const JacobiParams& p) {
    if (m < 1) throw std::invalid_argument("diagonal_zeros: m >= 1 required");
    const double a = p.alpha, b = p.beta;
    const double gamma = a + b + 2.0;
    const double A = binomial(m + a, m);       // P_m^{(a,b+1)}(1)
    const double B = binomial(m + a + 1.0, m);  // P_m^{(a+1,b)}(1)
    // A P^{(a+1,b)} + B P^{(a,b+1)}  ~  P_m^{(a+1,b+1)} + C P_{m-1}^{(a+1,b+1)}
    const double C = (A * (m + a + 1.0) - B * (m + b + 1.0)) / ((m + gamma) * (A + B));
    // monic correction: roots of pi_m + Chat pi_{m-1}
    const double kratio = 2.0 * m * (m + gamma) / ((2.0 * m + gamma) * (2.0 * m + gamma - 1.0));
    const double chat = C * kratio;

    const JacobiParams shifted(a + 1.0, b + 1.0);
    std::vector<double> ac, bc;
    jacobi_recurrence(m, shifted, ac, bc);
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(ac.data(), m);
    diag[m - 1] -= chat;
    Eigen::VectorXd sub(m > 1 ? m - 1 : 0);
    for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(bc[k]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw construction_error("diagonal_zeros: eigensolver failed");

    const double sh01 = std::sqrt(jacobi_norm_h(m, JacobiParams(a, b + 1.0)));
    const double sh10 = std::sqrt(jacobi_norm_h(m, JacobiParams(a + 1.0, b)));
    auto q = [&](double s) {
        return (A / sh01) * (jacobi_eval(m, JacobiParams(a + 1.0, b), s) / sh10) +
               (jacobi_eval(m, JacobiParams(a, b + 1.0), s) / sh01) * (B / sh10);
    };
    auto dq = [&](double s) {
        return (A / sh01) * (jacobi_deriv(m, JacobiParams(a + 1.0, b), s) / sh10) +
               (jacobi_deriv(m, JacobiParams(a, b + 1.0), s) / sh01) * (B / sh10);
    };
    std::vector<double> roots(m);
    for (int k = 0; k < m; ++k) {
        double s = es.eigenvalues()[k];
        for (int iter = 0; iter < 10; ++iter) {
            const double step = q(s) / dq(s);
            s -= step;
            if (std::abs(step) < 1e-15) break;
        }
        roots[k] = s;
    }
    std::sort(roots.begin(), roots.end());
    for (int k = 0; k < m; ++k) {
        if (!(roots[k] > -1.0 && roots[k] < 1.0))
            throw construction_error("diagonal_zeros: root escaped (-1,1)");
        if (k > 0 && !(roots[k] - roots[k - 1] > 1e-12))
            throw construction_error("diagonal_zeros: roots not simple");
    }
    std::vector<double> out;
    out.reserve(2 * m + 1);
    for (int k = m - 1; k >= 0; --k) out.push_back(-std::sqrt(0.5 * (1.0 + roots[k])));
    out.push_back(0.0);
    for (int k = 0; k < m; ++k) out.push_back(std::sqrt(0.5 * (1.0 + roots[k])));
    return out;
}

/// Minimal rule with N_min(2m+1) = 2(m+1)^2 - 1 nodes: the off-diagonal
/// orbits (j >= 1) plus the diagonal zeros.  Weights come from a least-squares
/// solve of the moment equations over the orthonormal basis of degree 2m+1,
/// restricted by symmetry to the invariant (even 1Q) block; the full-system
/// residual is the acceptance certificate.
inline CubatureRule2D minimal_rule(const WeightSpec& spec, int m) {
    if (spec.sigma != Sigma::minus_half)
        throw std::invalid_argument("minimal_rule: only sigma = -1/2 is supported");
    if (m < 1) throw std::invalid_argument("minimal_rule: m >= 1 required");
    const ThetaGrid grid = theta_grid(m, spec.jacobi());

    // orbits: (j,k) four-point orbits, then (0,0), then the +-xi pairs
    struct Orbit {
        std::vector<CubatureNode> pts;  // weight filled after the solve
    };
    std::vector<Orbit> orbits;
    for (int k = 1; k <= m; ++k) {
        for (int j = 1; j <= k; ++j) {
            const double s = std::cos(0.5 * (grid.thetas[j] - grid.thetas[k]));
            const double t = std::cos(0.5 * (grid.thetas[j] + grid.thetas[k]));
            Orbit o;
            o.pts = {{s, t, 0.0, j, k, 1},
                     {t, s, 0.0, j, k, 2},
                     {-s, -t, 0.0, j, k, 3},
                     {-t, -s, 0.0, j, k, 4}};
            orbits.push_back(std::move(o));
        }
    }
    const std::vector<double> xi = diagonal_zeros(m, spec.jacobi());
    Orbit origin;
    origin.pts = {{0.0, 0.0, 0.0, m, m, 0}};
    orbits.push_back(std::move(origin));
    for (int k = m + 1; k <= 2 * m; ++k) {  // positive xi entries
        Orbit o;
        o.pts = {{xi[k], xi[k], 0.0, k, k, 0}, {-xi[k], -xi[k], 0.0, 2 * m - k, 2 * m - k, 0}};
        orbits.push_back(std::move(o));
    }

    const int n_orbits = static_cast<int>(orbits.size());
    const int n_rows = (m + 1) * (m + 2) / 2;  // invariant basis elements 1Q_{k,2r}
    BasisEvaluator ev(spec, 2 * m + 1);
    BasisEvaluator::Workspace ws;
    std::vector<double> vals(BasisEvaluator::basis_size(2 * m + 1));

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_rows, n_orbits);
    for (int o = 0; o < n_orbits; ++o) {
        for (const auto& pt : orbits[o].pts) {
            ev.eval_all(2 * m, pt.x, pt.y, vals, ws);
            int row = 0;
            for (int r = 0; r <= m; ++r) {
                const int off = BasisEvaluator::degree_offset(2 * r);
                for (int k = 0; k <= r; ++k) A(row++, o) += vals[off + k];
            }
        }
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_rows);
    rhs[0] = 1.0;
    Eigen::VectorXd scale(n_orbits);
    for (int o = 0; o < n_orbits; ++o) {
        const double nc = A.col(o).norm();
        scale[o] = (nc > 0.0) ? 1.0 / nc : 1.0;
        A.col(o) *= scale[o];
    }
    Eigen::VectorXd wo = A.colPivHouseholderQr().solve(rhs);
    wo = wo.cwiseProduct(scale);

    CubatureRule2D rule{spec, m, RuleKind2D::minimal, 4 * m + 1, {}, {}};
    for (int o = 0; o < n_orbits; ++o)
        for (auto pt : orbits[o].pts) {
            pt.weight = wo[o];
            rule.nodes.push_back(pt);
        }
    if (rule.nodes.size() != 2u * (m + 1) * (m + 1) - 1)
        throw construction_error("minimal_rule: node count mismatch");

    // certificate: residual of the full degree-(2m+1) moment system
    double resid = 0.0;
    const int nb = BasisEvaluator::basis_size(2 * m + 1);
    Eigen::VectorXd lhs = Eigen::VectorXd::Zero(nb);
    for (const auto& n : rule.nodes) {
        ev.eval_all(2 * m + 1, n.x, n.y, vals, ws);
        for (int i = 0; i < nb; ++i) lhs[i] += n.weight * vals[i];
    }
    lhs[0] -= 1.0;
    resid = lhs.cwiseAbs().maxCoeff();
    if (!(resid <= 1e-9)) {
        std::ostringstream msg;
        msg << "minimal_rule: moment solve residual " << resid << " exceeds 1e-9 (alpha="
            << spec.alpha << ", beta=" << spec.beta << ", m=" << m << ")";
        throw construction_error(msg.str());
    }
    rule.solve_residual = resid;
    return rule;
}

/// Per-monomial exactness record against the brute-force oracle.
struct VerificationReport {
    std::string rule_id;
    int tested_degree;
    int oracle_order;
    std::vector<double> residuals;  // same layout as MomentTable::values
    int max_exact_degree;           // -1 if even degree 0 fails

    double residual_at(int a, int b) const {
        return residuals[static_cast<std::size_t>(a) * (tested_degree + 1) + b];
    }
};

inline std::string rule_id_string(const CubatureRule2D& rule) {
    std::ostringstream id;
    id << (rule.kind == RuleKind2D::near_minimal ? "near-minimal" : "minimal") << "(alpha="
       << rule.spec.alpha << ",beta=" << rule.spec.beta
       << ",sigma=" << sigma_value(rule.spec.sigma) << ",m=" << rule.m << ")";
    return id.str();
}

/// Compares the rule against oracle moments for every monomial of total
/// degree <= degree; tolerance for "exact" is 1e-10 * (1 + |moment|).
inline VerificationReport verify_rule(const CubatureRule2D& rule, int degree,
                                      int oracle_order = default_oracle_order) {
    if (degree < 0) throw std::invalid_argument("verify_rule: degree >= 0 required");
    const MomentTable table = moment_table(rule.spec, degree, oracle_order);
    VerificationReport rep{rule_id_string(rule), degree, oracle_order, {}, -1};
    const int d1 = degree + 1;
    rep.residuals.assign(static_cast<std::size_t>(d1) * d1, 0.0);

    std::vector<double> terms(rule.nodes.size());
    std::vector<std::vector<double>> px(rule.nodes.size()), py(rule.nodes.size());
    for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
        px[p].resize(d1);
        py[p].resize(d1);
        px[p][0] = py[p][0] = 1.0;
        for (int d = 1; d < d1; ++d) {
            px[p][d] = px[p][d - 1] * rule.nodes[p].x;
            py[p][d] = py[p][d - 1] * rule.nodes[p].y;
        }
    }
    for (int a = 0; a < d1; ++a)
        for (int b = 0; a + b < d1; ++b) {
            for (std::size_t p = 0; p < rule.nodes.size(); ++p)
                terms[p] = rule.nodes[p].weight * px[p][a] * py[p][b];
            const double sum = pairwise_sum(terms);
            rep.residuals[static_cast<std::size_t>(a) * d1 + b] = std::abs(sum - table.at(a, b));
        }
    for (int d = 0; d <= degree; ++d) {
        bool ok = true;
        for (int a = 0; a <= d && ok; ++a) {
            const double tol = 1e-10 * (1.0 + std::abs(table.at(a, d - a)));
            if (rep.residuals[static_cast<std::size_t>(a) * d1 + (d - a)] > tol) ok = false;
        }
        if (!ok) break;
        rep.max_exact_degree = d;
    }
    return rep;
}

}  // namespace cubkit
