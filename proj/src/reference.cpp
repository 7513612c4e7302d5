#include "fdrlab/reference.hpp"

#include <limits>
#include <stdexcept>

namespace fdrlab::reference {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ProcedureOutcome collect(const Dataset& ds, double t) {
    ProcedureOutcome out;
    out.threshold = kInf;
    for (double v : ds.x)
        if (v >= t) { out.threshold = t; break; }
    for (std::size_t i = 0; i < ds.x.size(); ++i) {
        if (ds.x[i] >= out.threshold) {
            out.rejected.push_back(i);
            ++out.counts.n_plus;
            if (ds.is_signal[i])
                ++out.counts.true_discoveries;
            else
                ++out.counts.false_discoveries;
        }
        if (ds.x[i] <= -out.threshold) ++out.counts.n_minus;
    }
    out.counts.missed_signals = ds.config.m - out.counts.true_discoveries;
    return out;
}

}  // namespace

ProcedureOutcome bh_threshold_scan(const Dataset& dataset,
                                   const DistributionSpec& spec, double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("bh_threshold_scan: q must be in (0,1)");
    const std::size_t n = dataset.x.size();
    double best = kInf;
    for (double t : dataset.x) {
        std::size_t n_plus = 0;
        for (double v : dataset.x)
            if (v >= t) ++n_plus;
        const double fdp = static_cast<double>(n) * survival(spec, t) /
                           static_cast<double>(n_plus);
        if (fdp <= q && t < best) best = t;
    }
    return collect(dataset, best);
}

ProcedureOutcome bc_threshold_scan(const Dataset& dataset, double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("bc_threshold_scan: q must be in (0,1)");
    double best = kInf;
    for (double t : dataset.x) {
        if (!(t > 0.0)) continue;
        std::size_t n_plus = 0, n_minus = 0;
        for (double v : dataset.x) {
            if (v >= t) ++n_plus;
            if (v <= -t) ++n_minus;
        }
        const double fdp = (static_cast<double>(n_minus) + 1.0) /
                           static_cast<double>(n_plus < 1 ? 1 : n_plus);
        if (fdp <= q && t < best) best = t;
    }
    return collect(dataset, best);
}

}  // namespace fdrlab::reference
