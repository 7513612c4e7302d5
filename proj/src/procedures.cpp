#include "fdrlab/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace fdrlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Build the outcome for a chosen threshold; all counts are taken at the
// final (possibly +inf) threshold so the type invariants hold.
ProcedureOutcome outcome_at(const Dataset& ds, double t) {
    ProcedureOutcome out;
    const std::size_t n = ds.x.size();
    out.rejected.reserve(64);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i)
        if (ds.x[i] >= t) { any = true; break; }
    out.threshold = any ? t : kInf;
    for (std::size_t i = 0; i < n; ++i) {
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

void check_q(double q) {
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("threshold rule: q must be in (0,1)");
}

}  // namespace

ProcedureOutcome fixed_threshold(const Dataset& dataset, double t) {
    if (std::isnan(t)) throw std::domain_error("fixed_threshold: t is NaN");
    return outcome_at(dataset, t);
}

double bh_fdp_hat(const Dataset& dataset, const DistributionSpec& spec, double t) {
    std::size_t n_plus = 0;
    for (double v : dataset.x)
        if (v >= t) ++n_plus;
    if (n_plus == 0)
        throw std::domain_error("bh_fdp_hat: no observation at or above t");
    return static_cast<double>(dataset.x.size()) * survival(spec, t) /
           static_cast<double>(n_plus);
}

ProcedureOutcome bh_threshold(const Dataset& dataset, const DistributionSpec& spec,
                              double q) {
    check_q(q);
    const std::size_t n = dataset.x.size();
    std::vector<double> v(dataset.x);
    std::sort(v.begin(), v.end(), std::greater<>());

    // Scan ranks bottom-up; the first passing rank is the largest one.
    // e = largest 1-based rank within the current tie group = #{x >= v[i]},
    // so the test below evaluates the FDP estimate at the common value.
    double chosen = kInf;
    std::size_t e = n;
    for (std::size_t i = n; i-- > 0;) {
        if (i + 1 >= n || v[i] != v[i + 1]) e = i + 1;
        const double fdp = static_cast<double>(n) * survival(spec, v[i]) /
                           static_cast<double>(e);
        if (fdp <= q) {
            chosen = v[i];
            break;
        }
    }
    return outcome_at(dataset, chosen);
}

double bc_fdp_hat(const Dataset& dataset, double t) {
    if (std::isnan(t) || t < 0.0)
        throw std::domain_error("bc_fdp_hat: t must be >= 0");
    std::size_t n_plus = 0, n_minus = 0;
    for (double v : dataset.x) {
        if (v >= t) ++n_plus;
        if (v <= -t) ++n_minus;
    }
    return (static_cast<double>(n_minus) + 1.0) /
           static_cast<double>(std::max<std::size_t>(n_plus, 1));
}

ProcedureOutcome bc_threshold(const Dataset& dataset, double q) {
    check_q(q);
    const std::size_t n = dataset.x.size();
    std::vector<double> sorted(dataset.x);
    std::sort(sorted.begin(), sorted.end());

    // Positive candidates in increasing order; first pass wins.
    const auto first_pos =
        std::upper_bound(sorted.begin(), sorted.end(), 0.0) - sorted.begin();
    double chosen = kInf;
    for (std::size_t k = static_cast<std::size_t>(first_pos); k < n; ++k) {
        const double t = sorted[k];
        if (k > static_cast<std::size_t>(first_pos) && t == sorted[k - 1])
            continue;  // duplicate candidate
        const std::size_t n_plus =
            n - static_cast<std::size_t>(
                    std::lower_bound(sorted.begin(), sorted.end(), t) -
                    sorted.begin());
        const std::size_t n_minus = static_cast<std::size_t>(
            std::upper_bound(sorted.begin(), sorted.end(), -t) - sorted.begin());
        const double fdp = (static_cast<double>(n_minus) + 1.0) /
                           static_cast<double>(std::max<std::size_t>(n_plus, 1));
        if (fdp <= q) {
            chosen = t;
            break;
        }
    }
    return outcome_at(dataset, chosen);
}

}  // namespace fdrlab
