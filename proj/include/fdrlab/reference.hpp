#pragma once

#include "fdrlab/procedures.hpp"

namespace fdrlab::reference {

// Exhaustive O(n^2) candidate scans of the threshold rule: evaluate the FDP
// estimate at every observed candidate by direct recounting and keep the
// smallest passing one (the discovery-maximizing choice).  Deliberately
// independent of the sorting-based implementations in procedures.cpp; used
// by the verification suites and unit tests.
ProcedureOutcome bh_threshold_scan(const Dataset& dataset,
                                   const DistributionSpec& spec, double q);
ProcedureOutcome bc_threshold_scan(const Dataset& dataset, double q);

}  // namespace fdrlab::reference
