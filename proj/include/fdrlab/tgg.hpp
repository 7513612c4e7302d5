#pragma once

#include <cstddef>
#include <vector>

#include "fdrlab/rng.hpp"

namespace fdrlab {

// Tail generalized Gaussian family: two-sided tails decaying like
// exp(-|t|^gamma / gamma) up to constants.  The sampler draws the exact
// constructive law  G = eps * (gamma * E)^(1/gamma)  with E standard
// exponential and eps a Rademacher sign, whose survival function is
//   Psi(t) = 1/2 exp(-|t|^gamma/gamma)        for t >= 0
//   Psi(t) = 1 - 1/2 exp(-|t|^gamma/gamma)    for t <  0,
// i.e. min{Psi, 1-Psi} = exp(-|t|^gamma/gamma) / 2 exactly.  z_lower and
// z_upper are carried along for the analytic layer, which is evaluated
// under arbitrary tail constants.
struct DistributionSpec {
    double gamma;    // tail degree, >= 1
    double z_lower;  // Z_l in the tail sandwich, z_lower >= z_upper > 0
    double z_upper;  // Z_u
};

// Tail constant of the constructive law (both sides).
inline constexpr double kConstructiveTailConstant = 2.0;

// Survival probabilities below this saturate to exactly 0 instead of
// producing subnormal noise.
inline constexpr double kSurvivalUnderflow = 1e-300;

// Validating factories; throw std::domain_error on a bad parameter.
DistributionSpec tgg_spec(double gamma);
DistributionSpec tgg_spec(double gamma, double z_lower, double z_upper);

// Psi(t).  Computed in log space; strictly decreasing in t.
double survival(const DistributionSpec& spec, double t);

// log Psi(t); exact for t >= 0, log1p-based for t < 0.
double log_survival(const DistributionSpec& spec, double t);

// Closed-form inverse of `survival` on (0, 1).
double inverse_survival(const DistributionSpec& spec, double p);

// `count` i.i.d. draws; deterministic given the stream state.
std::vector<double> sample(const DistributionSpec& spec, RngStream& rng,
                           std::size_t count);
void sample(const DistributionSpec& spec, RngStream& rng, double* out,
            std::size_t count);

}  // namespace fdrlab
