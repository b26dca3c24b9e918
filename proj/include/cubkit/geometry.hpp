#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cubkit/cubature.hpp"
#include "cubkit/jacobi.hpp"
#include "cubkit/numerics.hpp"

namespace cubkit {

/// Which theta family bounds the region: the near-minimal degree-(4m+1)
/// rules use the zeros of P_m^{(a+1,b)}; the degree-4m family uses P_m^{(a,b)}.
enum class RegionFamily { radau_shifted, plain };

struct RegionCurves {
    int m;
    JacobiParams params;
    RegionFamily family;
    double theta1;
    double theta_m;
    // sampled polylines, each `samples` points
    std::vector<std::pair<double, double>> s1_plus, s1_minus, s2_plus, s2_minus;
};

/// The four parametric curves
///   S1+- = +-(cos t, cos(t - theta_1)),  theta_1 < t < pi,
///   S2+- = +-(cos t, cos(t - theta_m)),  0 < t < theta_m,
/// bounding the node region together with the square boundary.
inline RegionCurves region_curves(int m, const JacobiParams& p, int samples,
                                  RegionFamily family = RegionFamily::radau_shifted) {
    if (m < 1) throw std::invalid_argument("region_curves: m >= 1 required");
    if (samples < 2) throw std::invalid_argument("region_curves: samples >= 2 required");
    const JacobiParams zero_params =
        family == RegionFamily::radau_shifted ? JacobiParams(p.alpha + 1.0, p.beta) : p;
    const QuadratureRule1D gauss = gauss_rule(m, zero_params);
    const double theta1 = safe_acos(gauss.nodes[m - 1]);
    const double thetam = safe_acos(gauss.nodes[0]);
    RegionCurves rc{m, p, family, theta1, thetam, {}, {}, {}, {}};
    rc.s1_plus.reserve(samples);
    rc.s2_plus.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double f = static_cast<double>(i) / (samples - 1);
        const double t1 = theta1 + f * (pi - theta1);
        rc.s1_plus.emplace_back(std::cos(t1), std::cos(t1 - theta1));
        const double t2 = f * thetam;
        rc.s2_plus.emplace_back(std::cos(t2), std::cos(t2 - thetam));
    }
    rc.s1_minus.resize(samples);
    rc.s2_minus.resize(samples);
    for (int i = 0; i < samples; ++i) {
        rc.s1_minus[i] = {-rc.s1_plus[i].first, -rc.s1_plus[i].second};
        rc.s2_minus[i] = {-rc.s2_plus[i].first, -rc.s2_plus[i].second};
    }
    return rc;
}

struct RegionReport {
    bool all_inside;
    std::vector<bool> inside;     // one flag per rule node
    std::vector<bool> exempt;     // diagonal nodes, excluded from the claim
};

/// Membership test for one point, carried out in angle space where the
/// bounding curves become the exact inequalities
///   |theta_x - theta_y| >= theta_1   and   min(e, 2pi - e) <= theta_m,
/// with e = theta_x + theta_y.
inline bool point_in_region(const RegionCurves& curves, double x, double y, double tol = 1e-12) {
    const double tx = safe_acos(x), ty = safe_acos(y);
    const double d = std::abs(tx - ty);
    const double e = tx + ty;
    return d >= curves.theta1 - tol && std::min(e, 2.0 * pi - e) <= curves.theta_m + tol;
}

/// Checks every off-diagonal node of the rule; nodes on x = y are exempt per
/// the statement of the region result.
inline RegionReport check_node_region(const CubatureRule2D& rule, const RegionCurves& curves,
                                      double tol = 1e-12) {
    if (rule.m != curves.m || rule.spec.alpha != curves.params.alpha ||
        rule.spec.beta != curves.params.beta)
        throw std::invalid_argument("check_node_region: rule/curve parameter mismatch");
    RegionReport rep{true, {}, {}};
    rep.inside.reserve(rule.nodes.size());
    rep.exempt.reserve(rule.nodes.size());
    for (const auto& n : rule.nodes) {
        const bool diag = std::abs(n.x - n.y) <= 1e-14;
        const bool ok = diag || point_in_region(curves, n.x, n.y, tol);
        rep.exempt.push_back(diag);
        rep.inside.push_back(ok);
        if (!ok) rep.all_inside = false;
    }
    return rep;
}

}  // namespace cubkit
