#include "fdrlab/tgg.hpp"

#include <cmath>
#include <stdexcept>

namespace fdrlab {

namespace {

constexpr double kLog2 = 0.6931471805599453;
// log(kSurvivalUnderflow)
constexpr double kLogUnderflow = -690.7755278982137;

double abs_pow(double t, double gamma) {
    const double a = std::abs(t);
    if (gamma == 1.0) return a;
    if (gamma == 2.0) return a * a;
    return std::pow(a, gamma);
}

void check_spec(const DistributionSpec& spec) {
    if (!(spec.gamma >= 1.0))
        throw std::domain_error("tgg: gamma must be >= 1");
    if (!(spec.z_upper > 0.0) || !(spec.z_lower >= spec.z_upper))
        throw std::domain_error("tgg: need z_lower >= z_upper > 0");
}

// log of the half-tail 1/2 exp(-|t|^gamma/gamma).
double log_half_tail(double t, double gamma) {
    return -abs_pow(t, gamma) / gamma - kLog2;
}

}  // namespace

DistributionSpec tgg_spec(double gamma) {
    return tgg_spec(gamma, kConstructiveTailConstant, kConstructiveTailConstant);
}

DistributionSpec tgg_spec(double gamma, double z_lower, double z_upper) {
    DistributionSpec spec{gamma, z_lower, z_upper};
    check_spec(spec);
    return spec;
}

double survival(const DistributionSpec& spec, double t) {
    if (!std::isfinite(t)) throw std::domain_error("survival: t must be finite");
    const double lh = log_half_tail(t, spec.gamma);
    const double half_tail = lh < kLogUnderflow ? 0.0 : std::exp(lh);
    return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

double log_survival(const DistributionSpec& spec, double t) {
    if (!std::isfinite(t)) throw std::domain_error("log_survival: t must be finite");
    const double lh = log_half_tail(t, spec.gamma);
    if (t >= 0.0) return lh;
    return std::log1p(-(lh < kLogUnderflow ? 0.0 : std::exp(lh)));
}

double inverse_survival(const DistributionSpec& spec, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("inverse_survival: p must be in (0,1)");
    if (p == 0.5) return 0.0;
    const double g = spec.gamma;
    // half-tail mass on the side that is crossed
    const double mass = p < 0.5 ? p : 1.0 - p;
    const double w = -(std::log(mass) + kLog2);  // |t|^gamma / gamma
    double t;
    if (g == 1.0)
        t = w;
    else if (g == 2.0)
        t = std::sqrt(2.0 * w);
    else
        t = std::pow(g * w, 1.0 / g);
    return p < 0.5 ? t : -t;
}

void sample(const DistributionSpec& spec, RngStream& rng, double* out,
            std::size_t count) {
    check_spec(spec);
    if (count == 0) throw std::domain_error("sample: count must be >= 1");
    const double g = spec.gamma;
    for (std::size_t i = 0; i < count; ++i) {
        const double e = rng.next_exponential();
        const double s = rng.next_sign();
        double v;
        if (g == 1.0)
            v = e;
        else if (g == 2.0)
            v = std::sqrt(2.0 * e);
        else
            v = std::pow(g * e, 1.0 / g);
        out[i] = s * v;
    }
}

std::vector<double> sample(const DistributionSpec& spec, RngStream& rng,
                           std::size_t count) {
    std::vector<double> out(count);
    sample(spec, rng, out.data(), count);
    return out;
}

}  // namespace fdrlab
