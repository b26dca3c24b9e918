#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cubkit/jacobi.hpp"
#include "test_support.hpp"

using namespace cubkit;
using testsup::uniform;
using testsup::uniform_int;

TEST_CASE("jacobi_eval basics") {
    CHECK(jacobi_eval(0, JacobiParams(0.7, -0.2), 0.3) == 1.0);

    // P_1^{(1/2,-1/2)}(t) = t + 1/2 from the degree-1 closed form
    const JacobiParams p(0.5, -0.5);
    for (double t : {-0.9, -0.25, 0.0, 0.6, 1.0})
        CHECK(jacobi_eval(1, p, t) == Catch::Approx(t + 0.5).margin(1e-15));

    // P_m(1) = binom(m + alpha, m)
    for (int m : {1, 2, 5, 9, 16}) {
        for (double a : {-0.5, 0.0, 0.5, 1.5}) {
            const JacobiParams q(a, uniform(-0.9, 1.5));
            CHECK(jacobi_eval(m, q, 1.0) ==
                  Catch::Approx(binomial(m + a, m)).epsilon(1e-13));
        }
    }
}

TEST_CASE("jacobi_norm_h") {
    CHECK(jacobi_norm_h(0, JacobiParams(1.2, -0.4)) == 1.0);

    // degree-2 norm against the 500-point transformed Gauss-Legendre oracle
    const JacobiParams cheb(-0.5, -0.5);
    const double oracle = testsup::gl_transformed(
        cheb, [&](double t) { const double v = jacobi_eval(2, cheb, t); return v * v; });
    CHECK(jacobi_norm_h(2, cheb) == Catch::Approx(oracle).margin(1e-13));

    // norm ratio identity h_m^{(a,b)} / h_m^{(a,b+1)}
    for (int trial = 0; trial < 20; ++trial) {
        const double a = uniform(-0.9, 1.8), b = uniform(-0.9, 1.8);
        const int m = uniform_int(1, 12);
        const double ratio = jacobi_norm_h(m, JacobiParams(a, b)) /
                             jacobi_norm_h(m, JacobiParams(a, b + 1.0));
        const double closed = (b + 1.0) * (a + b + m + 1.0) * (a + b + 2.0 * m + 2.0) /
                              ((a + b + 2.0) * (b + m + 1.0) * (a + b + 2.0 * m + 1.0));
        CHECK(ratio == Catch::Approx(closed).epsilon(1e-12));
    }
}

TEST_CASE("gauss_rule small closed forms") {
    const auto r1 = gauss_rule(1, JacobiParams(0.0, 0.0));
    REQUIRE(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(r1.weights[0] == Catch::Approx(1.0).margin(1e-15));

    const auto r2 = gauss_rule(2, JacobiParams(0.0, 0.0));
    CHECK(r2.nodes[0] == Catch::Approx(-1.0 / std::sqrt(3.0)).margin(1e-14));
    CHECK(r2.nodes[1] == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-14));
    CHECK(r2.weights[0] == Catch::Approx(0.5).margin(1e-14));
    CHECK(r2.weights[1] == Catch::Approx(0.5).margin(1e-14));
    CHECK(r2.exactness_degree == 3);
}

TEST_CASE("gauss_rule moments and structure") {
    for (int trial = 0; trial < 8; ++trial) {
        const JacobiParams p(uniform(-0.9, 1.9), uniform(-0.9, 1.9));
        const int n = uniform_int(1, 24);
        const auto rule = gauss_rule(n, p);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            CHECK(rule.weights[k] > 0.0);
            CHECK(std::abs(rule.nodes[k]) < 1.0);
            if (k > 0) CHECK(rule.nodes[k] > rule.nodes[k - 1]);
            wsum += rule.weights[k];
        }
        CHECK(wsum == Catch::Approx(1.0).margin(1e-13));
        for (int d = 0; d <= 2 * n - 1; ++d) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += rule.weights[k] * std::pow(rule.nodes[k], d);
            CHECK(s == Catch::Approx(testsup::jacobi_moment(d, p)).margin(1e-12));
        }
    }
}

TEST_CASE("gauss_rule discrete orthogonality") {
    const JacobiParams p(0.5, -0.25);
    const int n = 10;
    const auto rule = gauss_rule(n, p);
    std::vector<std::vector<double>> ptab(n);
    for (int k = 0; k < n; ++k) jacobi_orthonormal_table(n - 1, p, rule.nodes[k], ptab[k]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j <= 2 * n - 1 && j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += rule.weights[k] * ptab[k][i] * ptab[k][j];
            CHECK(s == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-11));
        }
}

TEST_CASE("gauss_radau_rule") {
    const auto r0 = gauss_radau_rule(0, JacobiParams(0.3, 0.9));
    REQUIRE(r0.nodes.size() == 1);
    CHECK(r0.nodes[0] == 1.0);
    CHECK(r0.weights[0] == 1.0);

    // Chebyshev case, degree-4 exactness
    {
        const JacobiParams cheb(-0.5, -0.5);
        const auto rule = gauss_radau_rule(2, cheb);
        CHECK(rule.nodes.back() == 1.0);
        for (int d = 0; d <= 4; ++d) {
            double s = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                s += rule.weights[k] * std::pow(rule.nodes[k], d);
            CHECK(s == Catch::Approx(testsup::jacobi_moment(d, cheb)).margin(1e-12));
        }
    }

    for (int trial = 0; trial < 8; ++trial) {
        const JacobiParams p(uniform(-0.9, 1.9), uniform(-0.9, 1.9));
        const int n = uniform_int(0, 16);
        const auto rule = gauss_radau_rule(n, p);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n + 1));
        CHECK(rule.nodes.back() == 1.0);
        CHECK(rule.exactness_degree == 2 * n);
        double wsum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK(wsum == Catch::Approx(1.0).margin(1e-13));
        for (int d = 0; d <= 2 * n; ++d) {
            double s = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                s += rule.weights[k] * std::pow(rule.nodes[k], d);
            CHECK(s == Catch::Approx(testsup::jacobi_moment(d, p)).margin(1e-12));
        }
        // endpoint weight: closed form vs the exactness-on-constants route
        CHECK(rule.weights.back() ==
              Catch::Approx(radau_endpoint_weight_closed(n, p)).margin(1e-10));
        double interior = 0.0;
        for (std::size_t k = 0; k + 1 < rule.weights.size(); ++k) interior += rule.weights[k];
        CHECK(rule.weights.back() == Catch::Approx(1.0 - interior).margin(1e-10));
    }

    // the closed form also covers alpha + beta = -1 (first-kind Chebyshev):
    // endpoint weight is 1/(2n+1) there
    const auto cheb = gauss_radau_rule(9, JacobiParams(-0.5, -0.5));
    CHECK(cheb.weights.back() == Catch::Approx(1.0 / 19.0).margin(1e-14));
    CHECK(radau_endpoint_weight_closed(9, JacobiParams(-0.5, -0.5)) ==
          Catch::Approx(1.0 / 19.0).margin(1e-14));
}

TEST_CASE("contiguous Jacobi identities") {
    for (int trial = 0; trial < 100; ++trial) {
        const double a = uniform(-0.95, 2.0), b = uniform(-0.95, 2.0);
        const double t = uniform(-1.0, 1.0);
        const int m = uniform_int(1, 20);
        const double gamma = a + b + 2.0;
        const JacobiParams pab(a, b), pa1(a + 1.0, b), pb1(a, b + 1.0), p11(a + 1.0, b + 1.0);

        const double lhs1 = (1.0 - t) * jacobi_eval(m, pa1, t) + (1.0 + t) * jacobi_eval(m, pb1, t);
        const double rhs1 = 2.0 * jacobi_eval(m, pab, t);
        CHECK(std::abs(lhs1 - rhs1) <= 1e-12 * (1.0 + std::abs(rhs1)));

        const double lhs3 = jacobi_eval(m, pa1, t) - jacobi_eval(m, pb1, t);
        const double rhs3 = jacobi_eval(m - 1, p11, t);
        CHECK(std::abs(lhs3 - rhs3) <= 1e-12 * (1.0 + std::abs(rhs3)));

        const double pm11 = jacobi_eval(m, p11, t);
        const double pm111 = jacobi_eval(m - 1, p11, t);
        const double lhs2a = pm11 + (m + a + 1.0) / (m + gamma) * pm111;
        const double rhs2a = (2.0 * m + gamma) / (m + gamma) * jacobi_eval(m, pa1, t);
        CHECK(std::abs(lhs2a - rhs2a) <= 1e-12 * (1.0 + std::abs(rhs2a)));
        const double lhs2b = pm11 - (m + b + 1.0) / (m + gamma) * pm111;
        const double rhs2b = (2.0 * m + gamma) / (m + gamma) * jacobi_eval(m, pb1, t);
        CHECK(std::abs(lhs2b - rhs2b) <= 1e-12 * (1.0 + std::abs(rhs2b)));

        // the pair used to build degree-(2m+2) vanishing combinations
        const double c = 2.0 * m + a + b + 2.0;
        const double lhs4 = (1.0 + t) * jacobi_eval(m, pb1, t);
        const double rhs4 = (2.0 * (m + 1.0) / c) * jacobi_eval(m + 1, pab, t) +
                            (2.0 * (m + b + 1.0) / c) * jacobi_eval(m, pab, t);
        CHECK(std::abs(lhs4 - rhs4) <= 1e-12 * (1.0 + std::abs(rhs4)));
        const double lhs5 = (1.0 - t) * jacobi_eval(m, pa1, t);
        const double rhs5 = (-2.0 * (m + 1.0) / c) * jacobi_eval(m + 1, pab, t) +
                            (2.0 * (m + a + 1.0) / c) * jacobi_eval(m, pab, t);
        CHECK(std::abs(lhs5 - rhs5) <= 1e-12 * (1.0 + std::abs(rhs5)));
    }
}

TEST_CASE("shifted-parameter pairs share no zeros") {
    for (int m = 1; m <= 20; ++m) {
        const double a = uniform(-0.9, 1.5), b = uniform(-0.9, 1.5);
        const auto za = gauss_rule(m, JacobiParams(a + 1.0, b)).nodes;
        const auto zb = gauss_rule(m, JacobiParams(a, b + 1.0)).nodes;
        double sep = 2.0;
        for (double x : za)
            for (double y : zb) sep = std::min(sep, std::abs(x - y));
        CHECK(sep > 1e-8);
    }
}
