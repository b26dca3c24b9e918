// cubkit command line: construct rules and interpolants, verify exactness,
// export nodes, region curves and Lebesgue data as JSON/CSV.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cubkit/cubkit.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verification = 2;
constexpr int exit_numerical = 3;

int env_oracle_order() {
    if (const char* v = std::getenv("CUBKIT_ORACLE_ORDER")) {
        const int k = std::atoi(v);
        if (k >= 16) return k;
        std::cerr << "cubkit: ignoring CUBKIT_ORACLE_ORDER=" << v << " (need >= 16)\n";
    }
    return cubkit::default_oracle_order;
}

cubkit::Sigma parse_sigma(double s) {
    if (s == -0.5) return cubkit::Sigma::minus_half;
    if (s == 0.5) return cubkit::Sigma::plus_half;
    throw CLI::ValidationError("--sigma must be -0.5 or 0.5");
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << text;
}

struct PolySpec {
    struct Term {
        int i, j;
        double c;
    };
    std::vector<Term> terms;
    int degree = 0;

    double operator()(double x, double y) const {
        double v = 0.0;
        for (const auto& t : terms) v += t.c * std::pow(x, t.i) * std::pow(y, t.j);
        return v;
    }
};

PolySpec parse_poly(const std::string& body) {
    PolySpec p;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        PolySpec::Term t{};
        char c1 = 0, c2 = 0;
        std::stringstream ts(item);
        if (!(ts >> t.i >> c1 >> t.j >> c2 >> t.c) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("bad poly term '" + item + "', expected i,j,c");
        if (t.i < 0 || t.j < 0) throw CLI::ValidationError("poly exponents must be >= 0");
        p.degree = std::max(p.degree, t.i + t.j);
        p.terms.push_back(t);
    }
    if (p.terms.empty()) throw CLI::ValidationError("empty poly spec");
    return p;
}

int cmd_rule(double alpha, double beta, double sigma, int m, const std::string& kind,
             const std::string& format, const std::string& out, std::optional<int> verify_degree,
             int oracle_order) {
    const cubkit::WeightSpec spec(alpha, beta, parse_sigma(sigma));
    cubkit::CubatureRule2D rule =
        kind == "minimal" ? cubkit::minimal_rule(spec, m) : cubkit::near_minimal_rule(spec, m);
    cubkit::RuleDocument doc = cubkit::make_document(rule);
    doc.oracle_order = oracle_order;
    bool shortfall = false;
    if (verify_degree) {
        const cubkit::VerificationReport rep = cubkit::verify_rule(rule, *verify_degree, oracle_order);
        doc.degree_verified = rep.max_exact_degree;
        if (rep.max_exact_degree < *verify_degree) {
            shortfall = true;
            std::cerr << "cubkit: verification shortfall: max exact degree " << rep.max_exact_degree
                      << " < requested " << *verify_degree << "\n";
        }
    }
    write_output(format == "csv" ? cubkit::to_csv(doc) : cubkit::to_json(doc), out);
    return shortfall ? exit_verification : exit_ok;
}

int cmd_interpolate(double alpha, double beta, int m, const std::string& function, int grid,
                    bool with_error) {
    const cubkit::WeightSpec spec(alpha, beta, cubkit::Sigma::minus_half);
    std::function<double(double, double)> f;
    if (function == "runge2d")
        f = [](double x, double y) { return 1.0 / (1.0 + 25.0 * (x * x + y * y)); };
    else if (function == "cospi")
        f = [](double x, double y) { return std::cos(cubkit::pi * (x + y)); };
    else if (function.rfind("poly:", 0) == 0)
        f = parse_poly(function.substr(5));
    else
        throw CLI::ValidationError("unknown --function '" + function + "'");

    const cubkit::InterpolationOperator op(spec, m);
    const std::vector<double> samples = op.sample(f);
    std::ostringstream os;
    os << (with_error ? "x,y,value,f,error\n" : "x,y,value\n");
    double max_err = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = grid == 1 ? 0.0 : -1.0 + 2.0 * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double y = grid == 1 ? 0.0 : -1.0 + 2.0 * j / (grid - 1);
            const double v = op.interpolate(samples, x, y);
            os << cubkit::format_number(x) << "," << cubkit::format_number(y) << ","
               << cubkit::format_number(v);
            if (with_error) {
                const double err = f(x, y) - v;
                max_err = std::max(max_err, std::abs(err));
                os << "," << cubkit::format_number(f(x, y)) << "," << cubkit::format_number(err);
            }
            os << "\n";
        }
    }
    if (with_error) os << "# max_abs_error," << cubkit::format_number(max_err) << "\n";
    std::cout << os.str();
    return exit_ok;
}

int cmd_lebesgue(double alpha, double beta, const std::vector<int>& mlist, int grid, bool fit) {
    const cubkit::WeightSpec spec(alpha, beta, cubkit::Sigma::minus_half);
    std::ostringstream os;
    os << "m,n,lambda\n";
    std::vector<double> logn, loglogn, loglam;
    for (int m : mlist) {
        const cubkit::InterpolationOperator op(spec, m);
        const double lam = op.lebesgue_constant(grid);
        const int n = 2 * m + 1;
        os << m << "," << n << "," << cubkit::format_number(lam) << "\n";
        logn.push_back(std::log(n));
        loglogn.push_back(std::log(std::log(n)));
        loglam.push_back(std::log(lam));
    }
    if (fit && mlist.size() >= 2) {
        auto lsq = [](const std::vector<double>& xs, const std::vector<double>& ys) {
            const std::size_t n = xs.size();
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < n; ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            const double icept = (sy - slope * sx) / n;
            double rss = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = ys[i] - slope * xs[i] - icept;
                rss += r * r;
            }
            return std::pair<double, double>(slope, rss);
        };
        const auto [pslope, prss] = lsq(logn, loglam);
        const auto [lslope, lrss] = lsq(loglogn, loglam);
        os << "# fit,power_exponent," << cubkit::format_number(pslope) << ",rss,"
           << cubkit::format_number(prss) << "\n";
        os << "# fit,loglog_exponent," << cubkit::format_number(lslope) << ",rss,"
           << cubkit::format_number(lrss) << "\n";
        os << "# fit,regime," << (prss <= lrss ? "power" : "log-squared") << "\n";
    }
    std::cout << os.str();
    return exit_ok;
}

int cmd_region(double alpha, double beta, int m, int samples, const std::string& family) {
    const cubkit::WeightSpec spec(alpha, beta, cubkit::Sigma::minus_half);
    const cubkit::RegionFamily fam = family == "plain" ? cubkit::RegionFamily::plain
                                                       : cubkit::RegionFamily::radau_shifted;
    const cubkit::RegionCurves curves = cubkit::region_curves(m, spec.jacobi(), samples, fam);
    const cubkit::CubatureRule2D rule = cubkit::near_minimal_rule(spec, m);
    const cubkit::RegionReport rep = cubkit::check_node_region(rule, curves);
    std::ostringstream os;
    os << "meta,m," << m << ",theta1," << cubkit::format_number(curves.theta1) << ",thetam,"
       << cubkit::format_number(curves.theta_m) << "\n";
    auto dump = [&](const char* name, const std::vector<std::pair<double, double>>& c) {
        for (const auto& [x, y] : c)
            os << "curve," << name << "," << cubkit::format_number(x) << ","
               << cubkit::format_number(y) << "\n";
    };
    dump("S1+", curves.s1_plus);
    dump("S1-", curves.s1_minus);
    dump("S2+", curves.s2_plus);
    dump("S2-", curves.s2_minus);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const auto& n = rule.nodes[i];
        os << "node," << n.j << "," << n.k << "," << cubkit::format_number(n.x) << ","
           << cubkit::format_number(n.y) << "," << (rep.inside[i] ? 1 : 0) << "\n";
    }
    std::cout << os.str();
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal and near-minimal cubature rules on the square, with interpolation"};
    app.require_subcommand(1);

    double alpha = 0.0, beta = 0.0, sigma = -0.5;
    int m = 0, grid = 256, samples = 256, oracle_order = env_oracle_order();
    std::string kind = "near-minimal", format = "json", out, function = "runge2d";
    std::string family = "shifted", mlist_str = "2,4,8,16";
    std::optional<int> verify_degree;
    bool with_error = false, fit = false;

    auto* rule = app.add_subcommand("rule", "construct a cubature rule");
    rule->add_option("--alpha", alpha)->required();
    rule->add_option("--beta", beta)->required();
    rule->add_option("--sigma", sigma)->required();
    rule->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
    rule->add_option("--kind", kind)->check(CLI::IsMember({"near-minimal", "minimal"}));
    rule->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    rule->add_option("--out", out);
    int vd = -1;
    rule->add_option("--verify-degree", vd);
    rule->add_option("--oracle-order", oracle_order)->check(CLI::Range(16, 4096));

    auto* interp = app.add_subcommand("interpolate", "evaluate the Lagrange interpolant on a grid");
    interp->add_option("--alpha", alpha)->required();
    interp->add_option("--beta", beta)->required();
    interp->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
    interp->add_option("--function", function);
    interp->add_option("--grid", grid)->check(CLI::PositiveNumber);
    interp->add_flag("--error", with_error);

    auto* leb = app.add_subcommand("lebesgue", "Lebesgue constants over a list of m");
    leb->add_option("--alpha", alpha)->required();
    leb->add_option("--beta", beta)->required();
    leb->add_option("--m-list", mlist_str);
    leb->add_option("--grid", grid)->check(CLI::PositiveNumber);
    leb->add_flag("--fit", fit);

    auto* region = app.add_subcommand("region", "node-region curves and membership flags");
    region->add_option("--alpha", alpha)->required();
    region->add_option("--beta", beta)->required();
    region->add_option("--m", m)->required()->check(CLI::PositiveNumber);
    region->add_option("--samples", samples)->check(CLI::PositiveNumber);
    region->add_option("--family", family)->check(CLI::IsMember({"shifted", "plain"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (rule->parsed()) {
            if (vd >= 0) verify_degree = vd;
            if (kind == "minimal" && sigma == 0.5) {
                std::cerr << "cubkit: minimal rules are not available for sigma = 0.5\n";
                return exit_usage;
            }
            return cmd_rule(alpha, beta, sigma, m, kind, format, out, verify_degree, oracle_order);
        }
        if (interp->parsed()) return cmd_interpolate(alpha, beta, m, function, grid, with_error);
        if (leb->parsed()) {
            std::vector<int> mlist;
            std::stringstream ss(mlist_str);
            std::string item;
            while (std::getline(ss, item, ',')) mlist.push_back(std::stoi(item));
            return cmd_lebesgue(alpha, beta, mlist, grid, fit);
        }
        if (region->parsed()) return cmd_region(alpha, beta, m, samples, family);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "cubkit: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "cubkit: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "cubkit: numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}
