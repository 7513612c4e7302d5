#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "fdrlab/rng.hpp"
#include "fdrlab/tgg.hpp"

using namespace fdrlab;

namespace {

// Two-sided sup deviation of the empirical survival from Psi; independent
// of the library's internals.
double sup_deviation(std::vector<double> xs, const DistributionSpec& d) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double s = survival(d, xs[i]);
        sup = std::max({sup, std::abs(s - (n - i) / n),
                        std::abs(s - (n - i - 1) / n)});
    }
    return sup;
}

}  // namespace

TEST_SUITE_BEGIN("tgg");

TEST_CASE("survival pinned values") {
    CHECK(survival(tgg_spec(2.0), 0.0) == 0.5);
    CHECK(survival(tgg_spec(1.0), std::log(2.0)) == doctest::Approx(0.25).epsilon(1e-14));
    // 1/2 exp(-4.5), frozen from a high-precision evaluation
    CHECK(survival(tgg_spec(2.0), 3.0) ==
          doctest::Approx(5.554498269121153e-3).epsilon(1e-13));
}

TEST_CASE("survival rejects non-finite input") {
    const auto d = tgg_spec(2.0);
    CHECK_THROWS_AS(survival(d, std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(survival(d, std::nan("")), std::domain_error);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(tgg_spec(0.5), std::domain_error);
    CHECK_THROWS_AS(tgg_spec(2.0, 1.0, 2.0), std::domain_error);  // Zl < Zu
    CHECK_THROWS_AS(tgg_spec(2.0, 0.0, 0.0), std::domain_error);
    CHECK_NOTHROW(tgg_spec(2.0, 2.0, 2.0));  // equality permitted
}

TEST_CASE("log_survival exact tails and agreement") {
    const auto d1 = tgg_spec(1.0);
    const auto d2 = tgg_spec(2.0);
    CHECK(log_survival(d2, 0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(log_survival(d1, 40.0) ==
          doctest::Approx(-40.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(log_survival(d2, 10.0) ==
          doctest::Approx(-50.0 - std::log(2.0)).epsilon(1e-15));
    // matches log(survival) wherever survival is representable
    for (double t : {-8.0, -3.0, -1.0, -0.1, 0.0, 0.1, 1.0, 3.0, 8.0, 20.0}) {
        const double s = survival(d2, t);
        if (s > 1e-300)
            CHECK(log_survival(d2, t) ==
                  doctest::Approx(std::log(s)).epsilon(1e-12));
    }
}

TEST_CASE("survival saturates to zero instead of subnormals") {
    const auto d = tgg_spec(1.0);
    CHECK(survival(d, 800.0) == 0.0);
    CHECK(log_survival(d, 800.0) == doctest::Approx(-800.0 - std::log(2.0)));
}

TEST_CASE("inverse_survival closed form and round trip") {
    const auto d1 = tgg_spec(1.0);
    const auto d2 = tgg_spec(2.0);
    CHECK(inverse_survival(d2, 0.5) == 0.0);
    CHECK(inverse_survival(d1, 0.25) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // sqrt(2 log 5000), frozen from a high-precision evaluation
    CHECK(inverse_survival(d2, 1e-4) ==
          doctest::Approx(4.12727348049926).epsilon(1e-13));
    CHECK_THROWS_AS(inverse_survival(d2, 0.0), std::domain_error);
    CHECK_THROWS_AS(inverse_survival(d2, 1.0), std::domain_error);

    for (double gamma : {1.0, 1.5, 2.0, 3.0}) {
        const auto d = tgg_spec(gamma);
        for (int k = 1; k <= 12; ++k) {
            const double p = std::pow(10.0, -k);
            CHECK(std::abs(survival(d, inverse_survival(d, p)) - p) <= 1e-10);
            // upper-tail side as well
            const double pu = 1.0 - p;
            CHECK(std::abs(survival(d, inverse_survival(d, pu)) - pu) <= 1e-10);
        }
    }
}

TEST_CASE("survival is strictly decreasing; inverse is monotone") {
    // strict inside the band where both tails are representable; saturated
    // far tails are only non-increasing
    const auto d = tgg_spec(1.5);
    double prev = survival(d, -8.0);
    for (double t = -7.75; t <= 8.0; t += 0.25) {
        const double s = survival(d, t);
        CHECK(s < prev);
        prev = s;
    }
    CHECK(survival(d, -40.0) == 1.0);
    CHECK(survival(d, 40.0) < survival(d, 8.0));
    CHECK(inverse_survival(d, 0.01) > inverse_survival(d, 0.02));
    CHECK(inverse_survival(d, 0.6) > inverse_survival(d, 0.9));
}

TEST_CASE("constructive law saturates the tail sandwich with Z = 2") {
    for (double gamma : {1.0, 2.0, 3.0}) {
        const auto d = tgg_spec(gamma);
        for (double t : {-5.0, -1.0, -0.3, 0.0, 0.3, 1.0, 5.0}) {
            const double s = survival(d, t);
            const double half_tail =
                std::exp(-std::pow(std::abs(t), gamma) / gamma) / 2.0;
            CHECK(std::min(s, 1.0 - s) == doctest::Approx(half_tail).epsilon(1e-12));
        }
    }
}

TEST_CASE("sampler determinism and count precondition") {
    const auto d = tgg_spec(2.0);
    RngStream a(42), b(42);
    const auto xa = sample(d, a, 1000);
    const auto xb = sample(d, b, 1000);
    CHECK(xa == xb);
    RngStream c(43);
    CHECK(sample(d, c, 1000) != xa);
    RngStream e(1);
    CHECK_THROWS_AS(sample(d, e, 0), std::domain_error);
}

TEST_CASE("sampler sign balance") {
    const auto d = tgg_spec(1.0);
    RngStream rng(7);
    const auto xs = sample(d, rng, 1000000);
    std::size_t pos = 0;
    for (double v : xs) pos += v > 0.0;
    const double frac = static_cast<double>(pos) / static_cast<double>(xs.size());
    CHECK(std::abs(frac - 0.5) <= 0.002);  // binomial 4-sigma band
}

TEST_CASE("sampler matches survival within the DKW band") {
    // 1e5 draws here; the acceptance suite runs the full 1e6 criterion.
    const std::size_t n = 100000;
    const double bound = std::sqrt(std::log(2.0 / 0.001) / (2.0 * n));
    for (double gamma : {1.0, 2.0, 3.0}) {
        const auto d = tgg_spec(gamma);
        RngStream rng(static_cast<std::uint64_t>(100 + 7 * gamma));
        CHECK(sup_deviation(sample(d, rng, n), d) <= bound);
    }
}

TEST_SUITE_END();
