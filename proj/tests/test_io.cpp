#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cubkit/cubature.hpp"
#include "cubkit/io.hpp"
#include "test_support.hpp"

using namespace cubkit;
using testsup::uniform;

TEST_CASE("JSON round-trip is lossless") {
    const auto rule = near_minimal_rule(WeightSpec(0.5, -0.5, Sigma::minus_half), 3);
    RuleDocument doc = make_document(rule);
    doc.degree_verified = 13;
    doc.oracle_order = 128;
    const RuleDocument back = from_json(to_json(doc));
    CHECK(back.schema == doc.schema);
    CHECK(back.alpha == doc.alpha);
    CHECK(back.beta == doc.beta);
    CHECK(back.sigma == doc.sigma);
    CHECK(back.m == doc.m);
    CHECK(back.kind == doc.kind);
    CHECK(back.degree_claimed == doc.degree_claimed);
    REQUIRE(back.degree_verified.has_value());
    CHECK(*back.degree_verified == 13);
    CHECK(back.oracle_order == 128);
    REQUIRE(back.nodes.size() == doc.nodes.size());
    for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
        CHECK(back.nodes[i].x == doc.nodes[i].x);  // bit-exact at 17 digits
        CHECK(back.nodes[i].y == doc.nodes[i].y);
        CHECK(back.nodes[i].weight == doc.nodes[i].weight);
        CHECK(back.nodes[i].j == doc.nodes[i].j);
        CHECK(back.nodes[i].k == doc.nodes[i].k);
        CHECK(back.nodes[i].orbit == doc.nodes[i].orbit);
    }
}

TEST_CASE("JSON round-trip survives adversarial doubles") {
    RuleDocument doc;
    doc.kind = "near-minimal";
    for (int i = 0; i < 200; ++i) {
        CubatureNode n{uniform(-1.0, 1.0), uniform(-1.0, 1.0) / 3.0, uniform(0.0, 1.0) / 7.0,
                       i % 5, i % 7, 1 + i % 4};
        doc.nodes.push_back(n);
    }
    const RuleDocument back = from_json(to_json(doc));
    for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
        CHECK(back.nodes[i].x == doc.nodes[i].x);
        CHECK(back.nodes[i].y == doc.nodes[i].y);
        CHECK(back.nodes[i].weight == doc.nodes[i].weight);
    }
}

TEST_CASE("CSV column order") {
    const auto rule = near_minimal_rule(WeightSpec(-0.5, -0.5, Sigma::minus_half), 0);
    const std::string csv = to_csv(make_document(rule));
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "x,y,weight,j,k,orbit");
    std::getline(is, line);
    CHECK(line == "1,1,0.5,0,0,1");
    std::getline(is, line);
    CHECK(line == "-1,-1,0.5,0,0,3");
    CHECK_FALSE(std::getline(is, line));
}

TEST_CASE("minimal rules carry the solve residual") {
    const auto rule = minimal_rule(WeightSpec(-0.5, -0.5, Sigma::minus_half), 1);
    const RuleDocument doc = make_document(rule);
    REQUIRE(doc.solve_residual.has_value());
    const RuleDocument back = from_json(to_json(doc));
    REQUIRE(back.solve_residual.has_value());
    CHECK(*back.solve_residual == *doc.solve_residual);
    CHECK(back.kind == "minimal");
}
