#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fdrlab/rng.hpp"
#include "fdrlab/tgg.hpp"

namespace fdrlab {

// One instance of the sparse sequence model: m = round(n^(1-beta)) signals
// shifted by mu = (gamma * r * log n)^(1/gamma) among n observations.
struct ProblemConfig {
    std::size_t n;
    double beta;   // sparsity exponent, in (0,1)
    double r;      // signal-strength exponent, > 0
    double gamma;  // tail degree, >= 1
    std::size_t m; // derived: round-half-even of n^(1-beta), clamped to [1,n]
    double mu;     // derived mean shift
    double pi1;    // derived signal fraction m/n
};

ProblemConfig make_config(std::size_t n, double beta, double r, double gamma);

// Linear-sparsity entry point: fixes the signal fraction pi1 in (0, 1/2]
// and derives beta = log(1/pi1)/log n.
ProblemConfig config_from_pi1(std::size_t n, double pi1, double r, double gamma);

enum class SignalPlacement { prefix, uniform_random };

struct Dataset {
    std::vector<double> x;
    std::vector<bool> is_signal;
    ProblemConfig config;
};

// One draw of the model: nulls ~ tGG(0), signals ~ tGG(0) + mu.  Signals
// occupy the first m indices by default; every implemented procedure is
// permutation-equivariant, so prefix placement is statistically neutral.
Dataset generate(const ProblemConfig& config, const DistributionSpec& spec,
                 RngStream& rng,
                 SignalPlacement placement = SignalPlacement::prefix);

// Debug dump: header row, then tab-separated index, x, is_signal.
void write_tsv(const Dataset& dataset, std::ostream& os);

}  // namespace fdrlab
