#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cubkit/jacobi.hpp"
#include "cubkit/numerics.hpp"

namespace cubkit {

enum class Sigma { minus_half, plus_half };

inline double sigma_value(Sigma s) { return s == Sigma::minus_half ? -0.5 : 0.5; }

/// Parameter triple (alpha, beta, sigma) selecting the weight
///   |x-y|^{2a+1} |x+y|^{2b+1} ((1-x^2)(1-y^2))^sigma  on [-1,1]^2,
/// always used in its self-normalized form (total mass 1).
struct WeightSpec {
    double alpha;
    double beta;
    Sigma sigma;

    WeightSpec(double a, double b, Sigma s) : alpha(a), beta(b), sigma(s) {
        if (!(a > -1.0) || !(b > -1.0))
            throw std::invalid_argument("WeightSpec: alpha, beta > -1 required");
    }

    JacobiParams jacobi() const { return JacobiParams(alpha, beta); }
};

constexpr int default_oracle_order = 96;

namespace detail {

/// One Gauss-Legendre panel sweep over the four corner triangles of
/// [0,pi]^2 cut by the lines theta=phi and theta+phi=pi.  In the rotated
/// coordinates psi=theta-phi, chi=theta+phi the cuts become the legs of four
/// right triangles, each mapped from the unit square by a corner-collapse;
/// the |.|^{2a+1} and |.|^{2b+1} factors are then single-signed per panel.
/// Calls visit(x, y, w) with w the weight-times-Jacobian quadrature mass.
template <typename Visitor>
void cw_panel_sweep(const WeightSpec& spec, int order, Visitor&& visit) {
    if (order < 16) throw std::invalid_argument("oracle order >= 16 required");
    std::vector<double> g, w;
    gauss_legendre(order, g, w);
    std::vector<double> r(order), wr(order);
    for (int i = 0; i < order; ++i) {
        r[i] = 0.5 * (g[i] + 1.0);
        wr[i] = 0.5 * w[i];
    }
    const double ea = 2.0 * spec.alpha + 1.0;
    const double eb = 2.0 * spec.beta + 1.0;
    const double es = 2.0 * sigma_value(spec.sigma) + 1.0;
    for (int tri = 0; tri < 4; ++tri) {
        for (int i = 0; i < order; ++i) {
            for (int j = 0; j < order; ++j) {
                const double rr = r[i], ss = r[j];
                double psi, chi;
                switch (tri) {
                    case 0: psi = pi * rr * ss; chi = pi * rr; break;
                    case 1: psi = -pi * rr * ss; chi = pi * rr; break;
                    case 2: psi = pi * rr * ss; chi = 2.0 * pi - pi * rr; break;
                    default: psi = -pi * rr * ss; chi = 2.0 * pi - pi * rr; break;
                }
                // dtheta dphi = (1/2) dpsi dchi = (1/2) pi^2 r dr ds
                const double jac = 0.5 * pi * pi * rr;
                const double th = 0.5 * (psi + chi);
                const double ph = 0.5 * (chi - psi);
                const double x = std::cos(th);
                const double y = std::cos(ph);
                const double fxy = std::abs(2.0 * std::sin(0.5 * psi) * std::sin(0.5 * chi));
                const double fxpy = std::abs(2.0 * std::cos(0.5 * psi) * std::cos(0.5 * chi));
                double wgt = jac * wr[i] * wr[j];
                if (ea != 0.0) wgt *= std::pow(fxy, ea);
                if (eb != 0.0) wgt *= std::pow(fxpy, eb);
                if (es != 0.0) {
                    const double sp = std::max(std::sin(th) * std::sin(ph), 0.0);
                    wgt *= std::pow(sp, es);
                }
                visit(x, y, wgt);
            }
        }
    }
}

}  // namespace detail

/// Brute-force integral of f against the self-normalized weight.  The square
/// is mapped to (theta,phi), split along both singular diagonals, and
/// integrated by product Gauss-Legendre panels; the result is divided by the
/// same procedure applied to f == 1.
inline double integrate_cw(const WeightSpec& spec, const std::function<double(double, double)>& f,
                           int order = default_oracle_order) {
    std::vector<double> num_parts, den_parts;
    num_parts.reserve(static_cast<std::size_t>(order) * order * 4);
    den_parts.reserve(static_cast<std::size_t>(order) * order * 4);
    detail::cw_panel_sweep(spec, order, [&](double x, double y, double w) {
        const double v = f(x, y);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate_cw: integrand returned a non-finite value");
        num_parts.push_back(w * v);
        den_parts.push_back(w);
    });
    return pairwise_sum(num_parts) / pairwise_sum(den_parts);
}

/// Table of normalized moments ∫ x^a y^b dW* for all a+b <= max_degree.
struct MomentTable {
    WeightSpec spec;
    int max_degree;
    int oracle_order;
    std::vector<double> values;  // (max_degree+1)^2 entries, row-major in (a,b)

    double at(int a, int b) const {
        if (a < 0 || b < 0 || a + b > max_degree)
            throw std::invalid_argument("MomentTable::at: degree out of range");
        return values[static_cast<std::size_t>(a) * (max_degree + 1) + b];
    }
};

/// All moments up to max_degree in a single panel sweep.
inline MomentTable moment_table(const WeightSpec& spec, int max_degree,
                                int order = default_oracle_order) {
    if (max_degree < 0) throw std::invalid_argument("moment_table: max_degree >= 0 required");
    const int d1 = max_degree + 1;
    // one accumulator block per triangle panel, combined pairwise at the end
    std::array<std::vector<double>, 4> parts;
    for (auto& p : parts) p.assign(static_cast<std::size_t>(d1) * d1, 0.0);
    std::vector<double> mass_parts(4, 0.0);
    std::vector<double> px(d1), py(d1);
    int panel = 0, count = 0;
    const int per_panel = order * order;
    detail::cw_panel_sweep(spec, order, [&](double x, double y, double w) {
        px[0] = 1.0;
        py[0] = 1.0;
        for (int a = 1; a < d1; ++a) {
            px[a] = px[a - 1] * x;
            py[a] = py[a - 1] * y;
        }
        auto& block = parts[panel];
        for (int a = 0; a < d1; ++a) {
            const double wx = w * px[a];
            double* row = block.data() + static_cast<std::size_t>(a) * d1;
            for (int b = 0; b + a < d1; ++b) row[b] += wx * py[b];
        }
        mass_parts[panel] += w;
        if (++count == per_panel) {
            count = 0;
            ++panel;
        }
    });
    MomentTable table{spec, max_degree, order, {}};
    table.values.assign(static_cast<std::size_t>(d1) * d1, 0.0);
    const double mass = (mass_parts[0] + mass_parts[1]) + (mass_parts[2] + mass_parts[3]);
    for (std::size_t i = 0; i < table.values.size(); ++i)
        table.values[i] = ((parts[0][i] + parts[1][i]) + (parts[2][i] + parts[3][i])) / mass;
    return table;
}

/// Integral of f(u,v) over the parabolic-triangle domain against the
/// normalized weight W_{a,b,sigma}, computed by pulling back through
/// (u,v) = (2xy, x^2+y^2-1).
inline double integrate_w_parabolic(const WeightSpec& spec,
                                    const std::function<double(double, double)>& f,
                                    int order = default_oracle_order) {
    return integrate_cw(
        spec, [&](double x, double y) { return f(2.0 * x * y, x * x + y * y - 1.0); }, order);
}

}  // namespace cubkit
