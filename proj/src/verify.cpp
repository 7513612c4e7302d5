#include "fdrlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "fdrlab/instance.hpp"
#include "fdrlab/metrics.hpp"
#include "fdrlab/procedures.hpp"
#include "fdrlab/reference.hpp"
#include "fdrlab/rng.hpp"
#include "fdrlab/sweep.hpp"
#include "fdrlab/theory.hpp"

namespace fdrlab {

namespace {

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

// Two-sided sup deviation between the empirical survival of xs and the
// model survival function.
double sup_survival_deviation(std::vector<double> xs, const DistributionSpec& d) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double s = survival(d, xs[i]);
        const double hi = (n - static_cast<double>(i)) / n;      // at x_(i)
        const double lo = (n - static_cast<double>(i) - 1) / n;  // just above
        sup = std::max({sup, std::abs(s - hi), std::abs(s - lo)});
    }
    return sup;
}

bool same_outcome(const ProcedureOutcome& a, const ProcedureOutcome& b) {
    return a.threshold == b.threshold && a.rejected == b.rejected;
}

// ---- suites ---------------------------------------------------------------

CheckResult check_kappa_closed_form(int) {
    // gamma = 1: kappa_star = (r - beta)/2 exactly, 50 grid points.
    RngStream rng(101);
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double beta = 0.01 + 0.85 * rng.next_unit();
        const double r = beta + (0.98 - beta) * (0.05 + 0.95 * rng.next_unit());
        const double ks = solve_kappa_star(beta, r, 1.0);
        const double err = std::abs(ks - 0.5 * (r - beta));
        worst = std::max(worst, err);
        if (err > 1e-10) ++bad;
    }
    return {"kappa-closed-form", bad == 0,
            fmt("50 points, max |kappa*-(r-beta)/2| = %.3g (tol 1e-10)", worst),
            0.0};
}

CheckResult check_kappa_residual(int) {
    const double gammas[4] = {1.0, 1.5, 2.0, 3.0};
    RngStream rng(202);
    int bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double gamma = gammas[k % 4];
        const double beta = 0.02 + 0.83 * rng.next_unit();
        const double r = beta + (0.97 - beta) * (0.02 + 0.98 * rng.next_unit());
        const double ks = solve_kappa_star(beta, r, gamma);
        const double res = std::abs(ks - gamma_distance(beta + ks, r, gamma));
        worst = std::max(worst, res);
        if (res > 1e-10 || !(ks >= 0.0) || !(ks < r - beta)) ++bad;
    }
    return {"kappa-residual", bad == 0,
            fmt("200 triples, max |kappa*-D(beta+kappa*,r)| = %.3g (tol 1e-10)",
                worst),
            0.0};
}

CheckResult check_fdr_control(int threads) {
    const ProblemConfig cfg = make_config(10000, 0.5, 0.9, 2.0);
    const DistributionSpec d = tgg_spec(2.0);
    const RiskEstimate est =
        estimate_risk(cfg, d, Procedure::bh, 0.1, 1000, 424242, threads);
    const double band = 0.1 + 3.0 * est.fdr_se;
    return {"fdr-control", est.fdr <= band,
            fmt("bh fdr = %.5f vs band 0.1 + 3*SE = %.5f (1000 trials)", est.fdr,
                band),
            0.0};
}

CheckResult check_oracle_equivalence(int) {
    const double gammas[4] = {1.0, 1.5, 2.0, 3.0};
    RngStream meta(707);
    int mismatches = 0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 4 + meta.next_below(61);  // 4..64
        const double beta = 0.1 + 0.8 * meta.next_unit();
        const double r = 0.15 + 0.8 * meta.next_unit();
        const double gamma = gammas[k % 4];
        const double q = 0.05 + 0.45 * meta.next_unit();
        const ProblemConfig cfg = make_config(n, beta, r, gamma);
        const DistributionSpec d = tgg_spec(gamma);
        RngStream rng = RngStream::substream(909, static_cast<std::uint64_t>(k));
        const Dataset ds = generate(cfg, d, rng);
        if (!same_outcome(bh_threshold(ds, d, q),
                          reference::bh_threshold_scan(ds, d, q)))
            ++mismatches;
        if (!same_outcome(bc_threshold(ds, q), reference::bc_threshold_scan(ds, q)))
            ++mismatches;
    }
    return {"oracle-equivalence", mismatches == 0,
            fmt("1000 instances (n <= 64), %d mismatches vs exhaustive scans",
                mismatches),
            0.0};
}

CheckResult check_risk_slope(int threads) {
    // gamma=1, beta=0.3, r=0.7; q = (1/24) n^(-kappa_star) with kappa_star=0.2.
    const double beta = 0.3, r = 0.7, gamma = 1.0;
    const std::size_t ns[3] = {1000, 10000, 100000};
    double lx[3], ly[3], risks[3];
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        const double q = optimal_q_star(beta, r, gamma, ns[i], 1.0 / 24.0,
                                        kConstructiveTailConstant);
        const ProblemConfig cfg = make_config(ns[i], beta, r, gamma);
        const RiskEstimate est = estimate_risk(cfg, tgg_spec(gamma), Procedure::bh,
                                               q, 2000, 5150 + i, threads);
        risks[i] = est.risk;
        lx[i] = std::log(static_cast<double>(ns[i]));
        ly[i] = std::log(est.risk);
        os << fmt(" n=%zu q=%.5f risk=%.4f", ns[i], q, est.risk);
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3.0;
    const double my = (ly[0] + ly[1] + ly[2]) / 3.0;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 3; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = num / den;
    const bool decreasing = risks[0] > risks[1] && risks[1] > risks[2];
    const bool slope_ok = std::abs(slope - (-0.2)) <= 0.15;
    return {"risk-slope", slope_ok && decreasing,
            fmt("slope = %.4f (target -0.2 +/- 0.15), strictly decreasing = %s;%s",
                slope, decreasing ? "yes" : "no", os.str().c_str()),
            0.0};
}

CheckResult check_fnr_sandwich(int threads) {
    const std::size_t n = 100000;
    const double beta = 0.4, r = 0.75, gamma = 2.0;
    const double z = kConstructiveTailConstant;
    const double ks = solve_kappa_star(beta, r, gamma);
    const double q = q_from_kappa(ks, n);
    const double tau = tau_min_from_q(beta, q, n, gamma, z);
    const FnrBounds bounds = fnr_bounds_at_tau(beta, ks, r, gamma, z, z, n);
    const ProblemConfig cfg = make_config(n, beta, r, gamma);
    const RiskEstimate est = estimate_risk(cfg, tgg_spec(gamma), Procedure::fixed,
                                           tau, 10000, 616161, threads);
    const double lo = bounds.lower - 4.0 * est.fnr_se;
    const double hi = bounds.upper + 4.0 * est.fnr_se;
    const bool ok = est.fnr >= lo && est.fnr <= hi;
    return {"fnr-sandwich", ok,
            fmt("fixed t = tau_min = %.4f: fnr = %.5f in [%.3g, %.3g] (4*SE slack, "
                "10^4 trials)",
                tau, est.fnr, lo, hi),
            0.0};
}

CheckResult check_bh_threshold_band(int) {
    const std::size_t n = 10000;
    const double beta = 0.3, r = 0.8, gamma = 2.0;
    const double z = kConstructiveTailConstant;
    const double q = optimal_q_star(beta, r, gamma, n, 1.0 / 24.0, z);
    const double tau =
        procedure_critical_threshold(beta, q, n, gamma, z, z, Algorithm::bh);
    const ProblemConfig cfg = make_config(n, beta, r, gamma);
    const DistributionSpec d = tgg_spec(gamma);
    const int trials = 2000;
    int exceed = 0;
    for (int i = 0; i < trials; ++i) {
        RngStream rng = RngStream::substream(818181, static_cast<std::uint64_t>(i));
        const Dataset ds = generate(cfg, d, rng);
        if (bh_threshold(ds, d, q).threshold > tau) ++exceed;
    }
    const double freq = static_cast<double>(exceed) / trials;
    return {"bh-threshold-band", freq <= 0.01,
            fmt("freq(t_bh > tau = %.4f) = %.4f over 2000 trials (bound 0.01, "
                "q = %.5f)",
                tau, freq, q),
            0.0};
}

CheckResult check_sampler_dkw(int) {
    const std::size_t n = 1000000;
    const double bound = std::sqrt(std::log(2.0 / 0.001) / (2.0 * n));
    std::ostringstream os;
    bool ok = true;
    for (double gamma : {1.0, 2.0}) {
        const DistributionSpec d = tgg_spec(gamma);
        RngStream rng(static_cast<std::uint64_t>(9000 + gamma));
        const double sup = sup_survival_deviation(sample(d, rng, n), d);
        ok = ok && sup <= bound;
        os << fmt(" gamma=%g sup=%.5g", gamma, sup);
    }
    return {"sampler-dkw", ok,
            fmt("10^6 draws, DKW bound %.5g;%s", bound, os.str().c_str()), 0.0};
}

CheckResult check_determinism(int) {
    SweepSpec s;
    s.n_values = {128, 256};
    s.beta_values = {0.4};
    s.r_values = {0.8};
    s.gamma_values = {1.0, 2.0};
    s.procedure = Procedure::bh;
    s.q = 0.2;
    s.trials = 60;
    s.master_seed = 20260809;
    std::ostringstream serial, parallel, parallel2;
    s.threads = 1;
    run_sweep(s, serial);
    s.threads = 4;
    run_sweep(s, parallel);
    run_sweep(s, parallel2);
    const bool ok =
        serial.str() == parallel.str() && parallel.str() == parallel2.str();
    return {"determinism", ok,
            fmt("serial vs 4-thread CSV byte-identical: %s (%zu bytes)",
                ok ? "yes" : "no", serial.str().size()),
            0.0};
}

CheckResult check_linear_sparsity(int) {
    const double target = 0.125;  // r / 2^gamma at r=0.5, gamma=2
    const std::size_t ns[3] = {1000, 10000, 100000};
    double dist[3];
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        const ProblemConfig cfg = config_from_pi1(ns[i], 0.1, 0.5, 2.0);
        const double ks = solve_kappa_star(cfg.beta, 0.5, 2.0);
        dist[i] = std::abs(ks - target);
        os << fmt(" n=%zu kappa*=%.5f", ns[i], ks);
    }
    const bool ok = dist[1] < dist[0] && dist[2] < dist[1];
    return {"linear-sparsity", ok,
            fmt("monotone approach to %.3f: %s;%s", target, ok ? "yes" : "no",
                os.str().c_str()),
            0.0};
}

struct Suite {
    const char* name;
    double budget_seconds;
    CheckResult (*fn)(int);
};

const Suite kSuites[] = {
    {"kappa-closed-form", 1.0, check_kappa_closed_form},
    {"kappa-residual", 1.0, check_kappa_residual},
    {"fdr-control", 60.0, check_fdr_control},
    {"oracle-equivalence", 10.0, check_oracle_equivalence},
    {"risk-slope", 600.0, check_risk_slope},
    {"fnr-sandwich", 120.0, check_fnr_sandwich},
    {"bh-threshold-band", 120.0, check_bh_threshold_band},
    {"sampler-dkw", 5.0, check_sampler_dkw},
    {"determinism", 60.0, check_determinism},
    {"linear-sparsity", 1.0, check_linear_sparsity},
};

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const Suite& s : kSuites) v.emplace_back(s.name);
        return v;
    }();
    return names;
}

CheckResult run_verify_suite(const std::string& name, int threads) {
    for (const Suite& s : kSuites) {
        if (name != s.name) continue;
        const auto start = std::chrono::steady_clock::now();
        CheckResult res = s.fn(threads);
        res.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (res.seconds >= s.budget_seconds) {
            res.passed = false;
            res.detail += fmt(" [over budget %.0fs]", s.budget_seconds);
        }
        return res;
    }
    throw std::invalid_argument("unknown verify suite: " + name);
}

}  // namespace fdrlab
