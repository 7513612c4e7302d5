#include "fdrlab/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fdrlab {

namespace {

std::size_t derive_signal_count(std::size_t n, double beta) {
    // round-half-to-even, clamped to [1, n]
    const double raw = std::pow(static_cast<double>(n), 1.0 - beta);
    const double rounded = std::nearbyint(raw);
    if (rounded < 1.0) return 1;
    if (rounded >= static_cast<double>(n)) return n;
    return static_cast<std::size_t>(rounded);
}

}  // namespace

ProblemConfig make_config(std::size_t n, double beta, double r, double gamma) {
    if (n < 2) throw std::domain_error("make_config: n must be >= 2");
    if (!(beta > 0.0) || !(beta < 1.0))
        throw std::domain_error("make_config: beta must be in (0,1)");
    if (!(r > 0.0)) throw std::domain_error("make_config: r must be > 0");
    if (!(gamma >= 1.0)) throw std::domain_error("make_config: gamma must be >= 1");
    ProblemConfig cfg{};
    cfg.n = n;
    cfg.beta = beta;
    cfg.r = r;
    cfg.gamma = gamma;
    cfg.m = derive_signal_count(n, beta);
    cfg.mu = std::pow(gamma * r * std::log(static_cast<double>(n)), 1.0 / gamma);
    cfg.pi1 = static_cast<double>(cfg.m) / static_cast<double>(n);
    return cfg;
}

ProblemConfig config_from_pi1(std::size_t n, double pi1, double r, double gamma) {
    if (!(pi1 > 0.0) || !(pi1 <= 0.5))
        throw std::domain_error("config_from_pi1: pi1 must be in (0, 1/2]");
    if (n < 2) throw std::domain_error("config_from_pi1: n must be >= 2");
    const double beta = std::log(1.0 / pi1) / std::log(static_cast<double>(n));
    return make_config(n, beta, r, gamma);
}

Dataset generate(const ProblemConfig& config, const DistributionSpec& spec,
                 RngStream& rng, SignalPlacement placement) {
    if (spec.gamma != config.gamma)
        throw std::domain_error("generate: spec.gamma must match config.gamma");
    Dataset ds;
    ds.config = config;
    ds.x = sample(spec, rng, config.n);
    ds.is_signal.assign(config.n, false);

    if (placement == SignalPlacement::prefix) {
        for (std::size_t i = 0; i < config.m; ++i) {
            ds.x[i] += config.mu;
            ds.is_signal[i] = true;
        }
    } else {
        // partial Fisher-Yates; placement draws come after the sample draws
        std::vector<std::uint32_t> idx(config.n);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::size_t i = 0; i < config.m; ++i) {
            const std::size_t j = i + rng.next_below(config.n - i);
            std::swap(idx[i], idx[j]);
            ds.x[idx[i]] += config.mu;
            ds.is_signal[idx[i]] = true;
        }
    }
    return ds;
}

void write_tsv(const Dataset& dataset, std::ostream& os) {
    os << "index\tx\tis_signal\n";
    char buf[40];
    for (std::size_t i = 0; i < dataset.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", dataset.x[i]);
        os << i << '\t' << buf << '\t' << (dataset.is_signal[i] ? 1 : 0) << '\n';
    }
}

}  // namespace fdrlab
