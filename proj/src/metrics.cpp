#include "fdrlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fdrlab {

TrialMetrics trial_metrics(const ProcedureOutcome& outcome, std::size_t m) {
    if (m == 0) throw std::domain_error("trial_metrics: m must be >= 1");
    const std::size_t rejections = outcome.rejected.size();
    const double fdp = static_cast<double>(outcome.counts.false_discoveries) /
                       static_cast<double>(std::max<std::size_t>(rejections, 1));
    const double fnp = static_cast<double>(outcome.counts.missed_signals) /
                       static_cast<double>(m);
    return {fdp, fnp};
}

namespace {

int resolve_threads(int threads, std::size_t trials) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), trials));
}

}  // namespace

RiskEstimate estimate_risk(const ProblemConfig& config, const DistributionSpec& spec,
                           Procedure procedure, double q_or_t, std::size_t trials,
                           std::uint64_t master_seed, int threads) {
    if (trials < 2) throw std::domain_error("estimate_risk: trials must be >= 2");
    // validate up front; the trial workers must not throw across threads
    if (spec.gamma != config.gamma)
        throw std::domain_error("estimate_risk: spec.gamma must match config.gamma");
    if (procedure == Procedure::fixed) {
        if (std::isnan(q_or_t))
            throw std::domain_error("estimate_risk: threshold is NaN");
    } else if (!(q_or_t > 0.0) || !(q_or_t < 1.0)) {
        throw std::domain_error("estimate_risk: q must be in (0,1)");
    }

    std::vector<double> fdp(trials), fnp(trials);
    auto run_block = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            RngStream rng = RngStream::substream(master_seed, i);
            const Dataset ds = generate(config, spec, rng);
            ProcedureOutcome out;
            switch (procedure) {
                case Procedure::fixed: out = fixed_threshold(ds, q_or_t); break;
                case Procedure::bh: out = bh_threshold(ds, spec, q_or_t); break;
                case Procedure::bc: out = bc_threshold(ds, q_or_t); break;
            }
            const TrialMetrics tm = trial_metrics(out, config.m);
            fdp[i] = tm.fdp;
            fnp[i] = tm.fnp;
        }
    };

    const int nthreads = resolve_threads(threads, trials);
    if (nthreads <= 1) {
        run_block(0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        const std::size_t chunk = (trials + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            const std::size_t hi = std::min(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_block, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // fixed-order reduction: identical result for any thread count
    double fdr = 0.0, fnr = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        fdr += fdp[i];
        fnr += fnp[i];
    }
    fdr /= static_cast<double>(trials);
    fnr /= static_cast<double>(trials);
    double vf = 0.0, vn = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        vf += (fdp[i] - fdr) * (fdp[i] - fdr);
        vn += (fnp[i] - fnr) * (fnp[i] - fnr);
    }
    const double denom = static_cast<double>(trials - 1);
    RiskEstimate est;
    est.fdr = fdr;
    est.fnr = fnr;
    est.risk = fdr + fnr;
    est.fdr_se = std::sqrt(vf / denom / static_cast<double>(trials));
    est.fnr_se = std::sqrt(vn / denom / static_cast<double>(trials));
    est.trials = trials;
    return est;
}

}  // namespace fdrlab
