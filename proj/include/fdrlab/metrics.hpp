#pragma once

#include <cstddef>
#include <cstdint>

#include "fdrlab/instance.hpp"
#include "fdrlab/procedures.hpp"

namespace fdrlab {

// Per-trial proportions: fdp = false_discoveries / max(|rejected|, 1),
// fnp = missed_signals / m.
struct TrialMetrics {
    double fdp;
    double fnp;
};

TrialMetrics trial_metrics(const ProcedureOutcome& outcome, std::size_t m);

enum class Procedure { fixed, bh, bc };

// Monte-Carlo estimate of FDR, FNR and combined risk with standard errors.
struct RiskEstimate {
    double fdr;
    double fnr;
    double risk;  // fdr + fnr
    double fdr_se;
    double fnr_se;
    std::size_t trials;
};

// Runs `trials` independent draws of the model, applies the procedure with
// parameter q_or_t (target FDR for bh/bc, threshold for fixed), and averages
// the per-trial proportions.  Trial i uses the substream (master_seed, i),
// and the reduction runs in trial order, so the result is bit-identical for
// any thread count.  threads: 0 = hardware concurrency, 1 = serial.
RiskEstimate estimate_risk(const ProblemConfig& config, const DistributionSpec& spec,
                           Procedure procedure, double q_or_t, std::size_t trials,
                           std::uint64_t master_seed, int threads = 0);

}  // namespace fdrlab
