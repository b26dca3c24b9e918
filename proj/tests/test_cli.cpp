#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string binary() {
    const char* p = std::getenv("CUBKIT_BIN");
    REQUIRE(p != nullptr);
    return p;
}

RunResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

int count_lines_with_prefix(const std::string& text, const std::string& prefix) {
    int count = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        if (text.compare(pos, prefix.size(), prefix) == 0) ++count;
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    return count;
}

}  // namespace

TEST_CASE("rule: m = 0 CSV") {
    const auto r = run("rule --alpha -0.5 --beta -0.5 --sigma -0.5 --m 0 --kind near-minimal "
                       "--format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "x,y,weight,j,k,orbit\n1,1,0.5,0,0,1\n-1,-1,0.5,0,0,3\n");
}

TEST_CASE("rule: verified near-minimal JSON") {
    const auto r = run("rule --alpha -0.5 --beta -0.5 --sigma -0.5 --m 3 --kind near-minimal "
                       "--verify-degree 13 --oracle-order 64");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema_version") == "1");
    CHECK(j.at("degree_verified").get<int>() >= 13);
    CHECK(j.at("nodes").size() == 32);
}

TEST_CASE("rule: minimal m = 1 has 7 nodes") {
    const auto r = run("rule --alpha -0.5 --beta -0.5 --sigma -0.5 --m 1 --kind minimal");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("nodes").size() == 7);
    CHECK(j.at("kind") == "minimal");
}

TEST_CASE("exit codes: usage errors") {
    CHECK(run("rule --alpha -0.5 --beta -0.5 --sigma 0.5 --m 2 --kind minimal").exit_code == 1);
    CHECK(run("rule --alpha -0.5 --beta -0.5").exit_code == 1);
    CHECK(run("interpolate --alpha 0 --beta 0 --m 2 --function nosuch").exit_code == 1);
    CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("exit codes: verification shortfall") {
    const auto r = run("rule --alpha -0.5 --beta -0.5 --sigma -0.5 --m 1 --kind near-minimal "
                       "--verify-degree 6 --oracle-order 48");
    CHECK(r.exit_code == 2);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("degree_verified").get<int>() == 5);
}

TEST_CASE("byte-identical output for identical flags") {
    const std::string args =
        "rule --alpha 0.5 --beta 1.5 --sigma -0.5 --m 4 --kind near-minimal --format json";
    const auto a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("oracle order env override shows up in metadata") {
    const auto r = run("rule --alpha 0 --beta 0 --sigma -0.5 --m 1 --kind near-minimal",
                       "CUBKIT_ORACLE_ORDER=64");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("metadata").at("oracle_order") == 64);
}

TEST_CASE("interpolate: constant and polynomial reproduction") {
    const auto ones = run("interpolate --alpha -0.5 --beta -0.5 --m 2 --function poly:0,0,1 "
                          "--grid 9 --error");
    CHECK(ones.exit_code == 0);
    const auto pos = ones.out.find("# max_abs_error,");
    REQUIRE(pos != std::string::npos);
    CHECK(std::abs(std::atof(ones.out.c_str() + pos + 16)) <= 1e-10);

    // total degree 4 = 2m: reproduced to 1e-9
    const auto poly = run("interpolate --alpha 0.5 --beta 0.5 --m 2 "
                          "--function 'poly:2,2,1;1,0,-0.25;0,3,0.5' --grid 13 --error");
    CHECK(poly.exit_code == 0);
    const auto p2 = poly.out.find("# max_abs_error,");
    REQUIRE(p2 != std::string::npos);
    CHECK(std::abs(std::atof(poly.out.c_str() + p2 + 16)) <= 1e-9);
}

TEST_CASE("interpolate: runge error shrinks with m") {
    auto max_err = [&](int m) {
        const auto r = run("interpolate --alpha -0.5 --beta -0.5 --m " + std::to_string(m) +
                           " --function runge2d --grid 17 --error");
        REQUIRE(r.exit_code == 0);
        const auto pos = r.out.find("# max_abs_error,");
        REQUIRE(pos != std::string::npos);
        return std::atof(r.out.c_str() + pos + 16);
    };
    CHECK(max_err(8) < max_err(4));
}

TEST_CASE("region: curve counts, containment, shrinking theta1") {
    const auto r = run("region --alpha -0.5 --beta -0.5 --m 4 --samples 50");
    CHECK(r.exit_code == 0);
    CHECK(count_lines_with_prefix(r.out, "curve,") == 4 * 50);
    CHECK(count_lines_with_prefix(r.out, "node,") == 50);
    CHECK(r.out.find(",0\n") == std::string::npos);  // no node flagged outside

    auto theta1 = [&](int m) {
        const auto rr = run("region --alpha -0.5 --beta -0.5 --m " + std::to_string(m) +
                            " --samples 2");
        const auto pos = rr.out.find("theta1,");
        REQUIRE(pos != std::string::npos);
        return std::atof(rr.out.c_str() + pos + 7);
    };
    CHECK(theta1(16) < theta1(4));
}

TEST_CASE("lebesgue: table shape, fit tag, monotone constants") {
    const auto r = run("lebesgue --alpha -0.5 --beta -0.5 --m-list 2,4,8 --grid 64 --fit");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("m,n,lambda\n", 0) == 0);
    CHECK(r.out.find("# fit,regime,log-squared\n") != std::string::npos);

    // lambda column monotone in m (observed, reported as data)
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    double prev = 0.0;
    for (int i = 0; i < 3; ++i) {
        std::getline(is, line);
        const auto c2 = line.rfind(',');
        const double lam = std::atof(line.c_str() + c2 + 1);
        CHECK(lam > prev);
        prev = lam;
    }
}
