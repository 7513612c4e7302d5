#pragma once

#include <cstddef>
#include <vector>

#include "fdrlab/instance.hpp"
#include "fdrlab/tgg.hpp"

namespace fdrlab {

struct TrialCounts {
    std::size_t false_discoveries = 0;  // |rejected ∩ nulls|
    std::size_t true_discoveries = 0;   // |rejected ∩ signals|
    std::size_t missed_signals = 0;     // m - true_discoveries
    std::size_t n_plus = 0;             // #{x_i >= threshold}
    std::size_t n_minus = 0;            // #{x_i <= -threshold}
};

// Outcome of a threshold-based rule.  Invariants: rejected = {i : x_i >=
// threshold} exactly, and threshold == +inf iff the rejection set is empty.
struct ProcedureOutcome {
    double threshold = 0.0;
    std::vector<std::size_t> rejected;  // ascending indices
    TrialCounts counts;
};

// Reject everything at or above a fixed threshold t.  t may be +/-inf; an
// empty rejection set is reported with threshold +inf.
ProcedureOutcome fixed_threshold(const Dataset& dataset, double t);

// FDP estimate using the true null survival function:
//   n * Psi(t) / #{x_i >= t}.
// Domain error if no observation reaches t.
double bh_fdp_hat(const Dataset& dataset, const DistributionSpec& spec, double t);

// Step-up rule: sort descending, reject down to the largest rank i with
// Psi(x_(i)) <= q * i/n (tied values share the largest rank).  Equivalently
// the smallest observed threshold whose estimated FDP is <= q.
ProcedureOutcome bh_threshold(const Dataset& dataset, const DistributionSpec& spec,
                              double q);

// Distribution-free FDP estimate from the reflected lower tail:
//   (#{x_i <= -t} + 1) / max(#{x_i >= t}, 1),  t >= 0.
double bc_fdp_hat(const Dataset& dataset, double t);

// Smallest positive observed value whose bc_fdp_hat is <= q; empty outcome
// if no candidate passes.  Candidates are the positive observations only;
// the estimator requires t >= 0 and is minimized on each inter-candidate
// interval at the data point, so this matches the infimum rule.
ProcedureOutcome bc_threshold(const Dataset& dataset, double q);

}  // namespace fdrlab
