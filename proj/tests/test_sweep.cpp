#include <cmath>
#include <doctest.h>
#include <sstream>
#include <vector>

#include "fdrlab/sweep.hpp"
#include "fdrlab/theory.hpp"

using namespace fdrlab;

namespace {

// keeps empty fields, including trailing ones
std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

SweepSpec small_spec() {
    SweepSpec s;
    s.n_values = {200, 400};
    s.beta_values = {0.5};
    s.r_values = {0.8};
    s.gamma_values = {1.0, 2.0};
    s.procedure = Procedure::bh;
    s.q = 0.2;
    s.trials = 30;
    s.master_seed = 42;
    s.threads = 1;
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("csv header and row count") {
    std::ostringstream os;
    run_sweep(small_spec(), os);
    const auto lines = split(os.str(), '\n');
    REQUIRE(lines.size() >= 1);
    CHECK(lines[0] == kCsvHeader);
    // 2 n * 1 beta * 1 r * 2 gamma = 4 data rows (+ trailing empty token)
    CHECK(lines.size() == 6);
    CHECK(lines.back().empty());
}

TEST_CASE("degenerate grid emits a single row") {
    SweepSpec s = small_spec();
    s.n_values = {100};
    s.gamma_values = {2.0};
    s.trials = 2;
    std::ostringstream os;
    run_sweep(s, os);
    CHECK(split(os.str(), '\n').size() == 3);
}

TEST_CASE("identical runs are byte-identical; threads do not matter") {
    std::ostringstream a, b, c;
    run_sweep(small_spec(), a);
    run_sweep(small_spec(), b);
    SweepSpec par = small_spec();
    par.threads = 4;
    run_sweep(par, c);
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
}

TEST_CASE("rows are self-consistent on re-parse") {
    std::ostringstream os;
    run_sweep(small_spec(), os);
    const auto lines = split(os.str(), '\n');
    for (std::size_t li = 1; li + 1 < lines.size(); ++li) {
        const auto cols = split(lines[li], ',');
        REQUIRE(cols.size() == 18);
        const double fdr = std::stod(cols[7]);
        const double fnr = std::stod(cols[9]);
        const double risk = std::stod(cols[11]);
        CHECK(std::abs(risk - (fdr + fnr)) <= 1e-12);
        CHECK(cols[4] == "bh");
        CHECK(cols[15] == "true");  // r=0.8 > beta=0.5 feasible
        // kappa_star column matches a direct solve
        const double ks = std::stod(cols[6]);
        CHECK(ks == doctest::Approx(solve_kappa_star(0.5, 0.8, std::stod(cols[3])))
                        .epsilon(1e-12));
    }
}

TEST_CASE("fixed procedure with an unreachable threshold") {
    SweepSpec s = small_spec();
    s.n_values = {100};
    s.gamma_values = {2.0};
    s.procedure = Procedure::fixed;
    s.threshold = 1e300;
    s.trials = 5;
    std::ostringstream os;
    run_sweep(s, os);
    const auto cols = split(split(os.str(), '\n')[1], ',');
    CHECK(cols[4] == "fixed");
    CHECK(std::stod(cols[5]) == 1e300);  // q column carries the threshold
    CHECK(std::stod(cols[7]) == 0.0);    // fdr
    CHECK(std::stod(cols[9]) == 1.0);    // fnr
    CHECK(cols[12].empty());             // no predicted exponent for fixed
    CHECK(cols[13].empty());
    CHECK(cols[14].empty());
}

TEST_CASE("pi1 axis derives beta and optimal policy fills q") {
    SweepSpec s;
    s.n_values = {1000};
    s.pi1_values = {0.1};
    s.r_values = {0.7};
    s.gamma_values = {1.0};
    s.procedure = Procedure::bh;
    s.q_policy = SweepSpec::QPolicy::optimal;
    s.c_star = 1.0 / 24.0;
    s.trials = 10;
    s.threads = 1;
    std::ostringstream os;
    run_sweep(s, os);
    const auto cols = split(split(os.str(), '\n')[1], ',');
    CHECK(std::stod(cols[1]) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const double expect_q =
        optimal_q_star(1.0 / 3.0, 0.7, 1.0, 1000, 1.0 / 24.0, 2.0);
    CHECK(std::stod(cols[5]) == doctest::Approx(expect_q).epsilon(1e-12));
}

TEST_CASE("sweep validation") {
    SweepSpec s = small_spec();
    s.n_values.clear();
    std::ostringstream os;
    CHECK_THROWS_AS(run_sweep(s, os), std::invalid_argument);
    s = small_spec();
    s.pi1_values = {0.1};  // both axes set
    CHECK_THROWS_AS(run_sweep(s, os), std::invalid_argument);
    s = small_spec();
    s.trials = 1;
    CHECK_THROWS_AS(run_sweep(s, os), std::invalid_argument);
    // optimal policy on an infeasible cell is an infeasible-parameter error
    s = small_spec();
    s.beta_values = {0.9};
    s.r_values = {0.3};
    s.q_policy = SweepSpec::QPolicy::optimal;
    CHECK_THROWS_AS(run_sweep(s, os), infeasible_error);
}

TEST_CASE("fixed-point curves contain kappa_star with matching sides") {
    Figure1Spec spec;
    spec.beta_values = {0.3};
    spec.r_values = {0.7};
    spec.gamma_values = {1.0, 2.0};
    spec.kappa_points = 41;
    std::ostringstream os;
    write_fixed_point_curves(spec, os);
    const auto lines = split(os.str(), '\n');
    CHECK(lines[0] == "beta,r,gamma,kappa,lhs,rhs");
    bool found_fixed_point[2] = {false, false};
    for (std::size_t li = 1; li + 1 < lines.size(); ++li) {
        const auto cols = split(lines[li], ',');
        REQUIRE(cols.size() == 6);
        const double gamma = std::stod(cols[2]);
        const double kappa = std::stod(cols[3]);
        const double lhs = std::stod(cols[4]);
        const double rhs = std::stod(cols[5]);
        CHECK(lhs == kappa);
        CHECK(rhs == doctest::Approx(gamma_distance(0.3 + kappa, 0.7, gamma))
                         .epsilon(1e-12));
        if (std::abs(lhs - rhs) <= 1e-9) found_fixed_point[gamma == 2.0] = true;
    }
    CHECK(found_fixed_point[0]);
    CHECK(found_fixed_point[1]);
}

TEST_CASE("kappa_star plane blanks the infeasible region") {
    Figure1Spec spec;
    spec.beta_values = {0.2, 0.5};
    spec.r_values = {0.2, 0.5, 0.8};
    spec.gamma_values = {2.0};
    std::ostringstream os;
    write_kappa_star_plane(spec, os);
    const auto lines = split(os.str(), '\n');
    CHECK(lines[0] == "r,beta,gamma,kappa_star");
    double last_ks_beta02 = -1.0;
    for (std::size_t li = 1; li + 1 < lines.size(); ++li) {
        const auto cols = split(lines[li], ',');
        REQUIRE(cols.size() == 4);
        const double r = std::stod(cols[0]);
        const double beta = std::stod(cols[1]);
        if (r <= beta) {
            CHECK(cols[3].empty());
        } else {
            const double ks = std::stod(cols[3]);
            CHECK(ks > 0.0);
            if (beta == 0.2) {
                // kappa_star increases with r at fixed beta
                CHECK(ks > last_ks_beta02);
                last_ks_beta02 = ks;
            }
        }
    }
}

TEST_CASE("config parser handles comments, spacing, duplicates") {
    std::istringstream in(
        "# a comment line\n"
        "n = 100,200\n"
        "  beta=0.4   # trailing comment\n"
        "seed = 1\n"
        "seed = 2\n"
        "\n");
    const auto kv = parse_key_value_config(in);
    CHECK(kv.at("n") == "100,200");
    CHECK(kv.at("beta") == "0.4");
    CHECK(kv.at("seed") == "2");
    CHECK(kv.size() == 3);

    std::istringstream bad("this line has no equals\n");
    CHECK_THROWS_AS(parse_key_value_config(bad), std::invalid_argument);
}

TEST_CASE("format_real round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 6.6037216352546395e-3, 1e300, -2.5}) {
        CHECK(std::stod(format_real(v)) == v);
    }
}

TEST_SUITE_END();
