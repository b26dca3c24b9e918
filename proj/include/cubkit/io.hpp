#pragma once

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "cubkit/cubature.hpp"

namespace cubkit {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr const char* schema_version = "1";

/// Formats a double with 17 significant digits (round-trip safe).
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Serializable view of a cubature rule.
struct RuleDocument {
    std::string schema = schema_version;
    double alpha = 0.0;
    double beta = 0.0;
    double sigma = -0.5;
    int m = 0;
    std::string kind;  // "near-minimal" | "minimal"
    int degree_claimed = 0;
    std::optional<int> degree_verified;
    std::optional<double> solve_residual;
    std::vector<CubatureNode> nodes;
    int oracle_order = default_oracle_order;
    std::string version = tool_version;
};

inline RuleDocument make_document(const CubatureRule2D& rule) {
    RuleDocument doc;
    doc.alpha = rule.spec.alpha;
    doc.beta = rule.spec.beta;
    doc.sigma = sigma_value(rule.spec.sigma);
    doc.m = rule.m;
    doc.kind = rule.kind == RuleKind2D::near_minimal ? "near-minimal" : "minimal";
    doc.degree_claimed = rule.degree;
    doc.solve_residual = rule.solve_residual;
    doc.nodes = rule.nodes;
    return doc;
}

/// JSON writer; hand-rolled so every number carries exactly 17 significant
/// digits as the schema requires.
inline std::string to_json(const RuleDocument& doc) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"schema_version\": \"" << doc.schema << "\",\n";
    os << "  \"spec\": {\"alpha\": " << format_number(doc.alpha)
       << ", \"beta\": " << format_number(doc.beta) << ", \"sigma\": " << format_number(doc.sigma)
       << "},\n";
    os << "  \"m\": " << doc.m << ",\n";
    os << "  \"kind\": \"" << doc.kind << "\",\n";
    os << "  \"degree_claimed\": " << doc.degree_claimed << ",\n";
    if (doc.degree_verified) os << "  \"degree_verified\": " << *doc.degree_verified << ",\n";
    if (doc.solve_residual)
        os << "  \"solve_residual\": " << format_number(*doc.solve_residual) << ",\n";
    os << "  \"nodes\": [\n";
    for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
        const auto& n = doc.nodes[i];
        os << "    {\"x\": " << format_number(n.x) << ", \"y\": " << format_number(n.y)
           << ", \"weight\": " << format_number(n.weight) << ", \"j\": " << n.j
           << ", \"k\": " << n.k << ", \"orbit\": " << n.orbit << "}"
           << (i + 1 < doc.nodes.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"metadata\": {\"tool_version\": \"" << doc.version
       << "\", \"oracle_order\": " << doc.oracle_order << "}\n";
    os << "}\n";
    return os.str();
}

inline RuleDocument from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RuleDocument doc;
    doc.schema = j.at("schema_version").get<std::string>();
    doc.alpha = j.at("spec").at("alpha").get<double>();
    doc.beta = j.at("spec").at("beta").get<double>();
    doc.sigma = j.at("spec").at("sigma").get<double>();
    doc.m = j.at("m").get<int>();
    doc.kind = j.at("kind").get<std::string>();
    doc.degree_claimed = j.at("degree_claimed").get<int>();
    if (j.contains("degree_verified")) doc.degree_verified = j.at("degree_verified").get<int>();
    if (j.contains("solve_residual")) doc.solve_residual = j.at("solve_residual").get<double>();
    for (const auto& nj : j.at("nodes")) {
        CubatureNode n{nj.at("x").get<double>(),      nj.at("y").get<double>(),
                       nj.at("weight").get<double>(), nj.at("j").get<int>(),
                       nj.at("k").get<int>(),         nj.at("orbit").get<int>()};
        doc.nodes.push_back(n);
    }
    doc.version = j.at("metadata").at("tool_version").get<std::string>();
    doc.oracle_order = j.at("metadata").at("oracle_order").get<int>();
    return doc;
}

/// CSV body: fixed column order x, y, weight, j, k, orbit.
inline std::string to_csv(const RuleDocument& doc) {
    std::ostringstream os;
    os << "x,y,weight,j,k,orbit\n";
    for (const auto& n : doc.nodes)
        os << format_number(n.x) << "," << format_number(n.y) << "," << format_number(n.weight)
           << "," << n.j << "," << n.k << "," << n.orbit << "\n";
    return os.str();
}

}  // namespace cubkit
