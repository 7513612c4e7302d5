#include "fdrlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdrlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double root_g(double v, double gamma) {
    if (gamma == 1.0) return v;
    if (gamma == 2.0) return std::sqrt(v);
    return std::pow(v, 1.0 / gamma);
}

double pow_g(double v, double gamma) {
    if (gamma == 1.0) return v;
    if (gamma == 2.0) return v * v;
    return std::pow(v, gamma);
}

// beta^((1-gamma)/gamma); equals 1 at gamma = 1 and at beta = 1.
double beta_weight(double beta, double gamma) {
    if (gamma == 1.0) return 1.0;
    return std::pow(beta, (1.0 - gamma) / gamma);
}

std::uint64_t to_count(double v) {
    if (!(v >= 0.0)) return 0;
    if (v >= 1.8446744073709552e19) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(v);
}

void check_n(std::size_t n) {
    if (n < 2) throw std::domain_error("theory: n must be >= 2");
}

}  // namespace

double gamma_distance(double a, double b, double gamma) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::domain_error("gamma_distance: inputs must be >= 0");
    if (!(gamma >= 1.0))
        throw std::domain_error("gamma_distance: gamma must be >= 1");
    return pow_g(std::abs(root_g(a, gamma) - root_g(b, gamma)), gamma);
}

double solve_kappa_star(double beta, double r, double gamma, double tol) {
    if (!(beta > 0.0)) throw std::domain_error("solve_kappa_star: beta must be > 0");
    if (!(gamma >= 1.0))
        throw std::domain_error("solve_kappa_star: gamma must be >= 1");
    if (!(tol > 0.0)) throw std::domain_error("solve_kappa_star: tol must be > 0");
    if (!(r > beta)) throw infeasible_error("solve_kappa_star: infeasible, r <= beta");

    // residual(k) = gamma_distance(beta + k, r) - k is strictly decreasing on
    // [0, r - beta), positive at 0 and negative at the right end.
    double lo = 0.0;
    double hi = r - beta - 1e-15;
    if (hi <= lo) return 0.5 * (r - beta);
    for (int it = 0; it < 200 && hi - lo > std::min(tol, 1e-15); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double res = gamma_distance(beta + mid, r, gamma) - mid;
        if (res > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double kappa_from_q(double q, std::size_t n) {
    check_n(n);
    if (!(q > 0.0) || !(q < 1.0))
        throw std::domain_error("kappa_from_q: q must be in (0,1)");
    return std::log(1.0 / q) / std::log(static_cast<double>(n));
}

double q_from_kappa(double kappa, std::size_t n) {
    if (n < 1) throw std::domain_error("q_from_kappa: n must be >= 1");
    return std::exp(-kappa * std::log(static_cast<double>(n)));
}

bool r_min_is_capped(double beta, double kappa, std::size_t n) {
    check_n(n);
    const double branch_point =
        1.0 - beta - std::log(3.0 / std::log(16.0)) / std::log(static_cast<double>(n));
    return kappa > branch_point;
}

double r_min_boundary(double beta, double kappa, std::size_t n, double z_lower) {
    check_n(n);
    if (!(z_lower > 0.0)) throw std::domain_error("r_min: z_lower must be > 0");
    return beta + kappa + std::log(1.0 / (6.0 * z_lower)) /
                              std::log(static_cast<double>(n));
}

double r_min(double beta, double kappa, std::size_t n, double z_lower) {
    check_n(n);
    if (!(z_lower > 0.0)) throw std::domain_error("r_min: z_lower must be > 0");
    if (!(kappa > 0.0) || !(kappa < 1.0))
        throw std::domain_error("r_min: kappa must be in (0,1)");
    if (r_min_is_capped(beta, kappa, n))
        return 1.0 + std::log(1.0 / (24.0 * z_lower)) /
                         std::log(static_cast<double>(n));
    return r_min_boundary(beta, kappa, n, z_lower);
}

CriticalThreshold tau_min_checked(double beta, double kappa, std::size_t n,
                                  double gamma, double z_lower) {
    const double rm = r_min(beta, kappa, n, z_lower);
    if (!(rm > 0.0)) return {0.0, true};
    return {root_g(gamma * rm * std::log(static_cast<double>(n)), gamma), false};
}

double tau_min(double beta, double kappa, std::size_t n, double gamma,
               double z_lower) {
    return tau_min_checked(beta, kappa, n, gamma, z_lower).value;
}

double tau_min_from_q(double beta, double q, std::size_t n, double gamma,
                      double z_lower) {
    return tau_min(beta, kappa_from_q(q, n), n, gamma, z_lower);
}

FnrBounds fnr_bounds_at_tau(double beta, double kappa, double r, double gamma,
                            double z_lower, double z_upper, std::size_t n,
                            double scale_c) {
    if (!(beta > 0.0) || !(beta <= 1.0))
        throw std::domain_error("fnr_bounds_at_tau: beta must be in (0,1]");
    if (!(scale_c > 0.0))
        throw std::domain_error("fnr_bounds_at_tau: scale_c must be > 0");
    const double log_n = std::log(static_cast<double>(n));
    const double x = beta_weight(beta, gamma);
    const double zeta = std::max(6.0 * z_lower, 1.0 / (6.0 * z_lower));
    const double d = gamma_distance(beta + kappa, r, gamma);
    // exponents assembled first, single exp at the end
    const double log_decay = -d * log_n;
    FnrBounds out;
    out.critical = !(r > r_min(beta, kappa, n, z_lower));
    out.lower = out.critical
                    ? 0.5
                    : std::exp(-2.0 * x * std::log(zeta) + log_decay) / z_lower;
    const double c = std::max(scale_c, 1.0 / scale_c);
    out.upper = std::exp(2.0 * x * std::log(c * zeta) + log_decay) / z_upper;
    return out;
}

double fnr_lower_prefactor(double beta, double gamma, double z_lower) {
    const double zeta = std::max(6.0 * z_lower, 1.0 / (6.0 * z_lower));
    const double c1 = 2.0 * std::log(4.0 * zeta);
    return std::exp(-c1 * beta_weight(beta, gamma)) / z_lower;
}

double fnr_lower_bound(double beta, double kappa, double r, double gamma,
                       double z_lower, double /*z_upper*/, std::size_t n) {
    const double rm = r_min(beta, kappa, n, z_lower);
    // boundary ties resolve to the critical branch
    if (r >= beta && r <= rm) return 1.0 / 32.0;
    const double d = gamma_distance(beta + kappa, r, gamma);
    return fnr_lower_prefactor(beta, gamma, z_lower) *
           std::exp(-d * std::log(static_cast<double>(n)));
}

AlgorithmConstants algorithm_constants(double z_lower, double z_upper) {
    if (!(z_upper > 0.0) || !(z_lower >= z_upper))
        throw std::domain_error("algorithm_constants: need z_lower >= z_upper > 0");
    return {z_upper / (36.0 * z_lower), z_upper / (48.0 * z_lower),
            std::max(6.0 * z_lower, 1.0 / (6.0 * z_lower))};
}

double fnr_upper_bound(double beta, double q, double r, double gamma,
                       double z_lower, double z_upper, std::size_t n,
                       Algorithm algorithm) {
    const AlgorithmConstants ac = algorithm_constants(z_lower, z_upper);
    const double c_a = algorithm == Algorithm::bh ? ac.c_bh : ac.c_bc;
    const double zeta_a = ac.zeta / c_a;
    const double kappa = kappa_from_q(q, n);
    const double d = gamma_distance(beta + kappa, r, gamma);
    const double x = beta_weight(beta, gamma);
    double bound = 2.0 *
                   std::exp(2.0 * x * std::log(zeta_a) -
                            d * std::log(static_cast<double>(n))) /
                   z_upper;
    if (algorithm == Algorithm::bc) bound += q;
    return bound;
}

double procedure_critical_threshold(double beta, double q, std::size_t n,
                                    double gamma, double z_lower, double z_upper,
                                    Algorithm algorithm) {
    const AlgorithmConstants ac = algorithm_constants(z_lower, z_upper);
    const double c_a = algorithm == Algorithm::bh ? ac.c_bh : ac.c_bc;
    const double kappa = kappa_from_q(c_a * q, n);
    const double rm = r_min_boundary(beta, kappa, n, z_lower);
    if (!(rm > 0.0)) return 0.0;
    return root_g(gamma * rm * std::log(static_cast<double>(n)), gamma);
}

double optimal_q_star(double beta, double r, double gamma, std::size_t n,
                      double c_star, double z_lower) {
    const double cap = std::min(1.0 / 24.0, 1.0 / (6.0 * z_lower));
    if (!(c_star > 0.0) || c_star > cap)
        throw std::domain_error("optimal_q_star: c_star outside (0, min{1/24, 1/(6 z_lower)}]");
    if (n < 1) throw std::domain_error("optimal_q_star: n must be >= 1");
    const double ks = solve_kappa_star(beta, r, gamma);
    return c_star * std::exp(-ks * std::log(static_cast<double>(n)));
}

std::uint64_t n_min_lower(double z_lower, double r_max) {
    if (!(z_lower > 0.0)) throw std::domain_error("n_min_lower: z_lower must be > 0");
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw std::domain_error("n_min_lower: r_max must be in (0,1)");
    const double base = 24.0 * std::max(z_lower, 1.0) * std::log(4.0);
    return to_count(std::floor(std::pow(base, 1.0 / (1.0 - r_max))));
}

std::uint64_t n_min_upper(double z_upper, double r_max) {
    if (!(z_upper > 0.0)) throw std::domain_error("n_min_upper: z_upper must be > 0");
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw std::domain_error("n_min_upper: r_max must be in (0,1)");
    // Want the smallest n0 with exp(-n^(1-r_max)/24) <= 1/(z_upper n) for all
    // n >= n0, i.e. h(n) = log(z_upper n) - n^(1-r_max)/24 <= 0 from n0 on.
    // h is unimodal with peak at (24/(1-r_max))^(1/(1-r_max)).
    const double expo = 1.0 - r_max;
    const auto h = [&](double n) {
        return std::log(z_upper * n) - std::pow(n, expo) / 24.0;
    };
    const double peak = std::pow(24.0 / expo, 1.0 / expo);
    if (h(std::max(peak, 1.0)) <= 0.0) return 1;
    double lo = std::max(peak, 1.0);
    double hi = lo;
    while (h(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e300) return std::numeric_limits<std::uint64_t>::max();
    }
    for (int it = 0; it < 200 && hi - lo > 0.5; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0.0 ? lo : hi) = mid;
    }
    std::uint64_t candidate = to_count(std::ceil(hi));
    while (candidate > 1 && h(static_cast<double>(candidate - 1)) <= 0.0)
        --candidate;
    return candidate;
}

TheoryParams theory_params_from_q(double beta, double r, double gamma,
                                  double z_lower, double z_upper, double r_max,
                                  double q, std::size_t n) {
    TheoryParams p{beta, r, gamma, z_lower, z_upper, r_max,
                   kappa_from_q(q, n), q, n};
    return p;
}

TheoryParams theory_params_from_kappa(double beta, double r, double gamma,
                                      double z_lower, double z_upper, double r_max,
                                      double kappa, std::size_t n) {
    TheoryParams p{beta, r, gamma, z_lower, z_upper, r_max,
                   kappa, q_from_kappa(kappa, n), n};
    return p;
}

AssumptionReport check_assumptions(const TheoryParams& params) {
    const double log_n = std::log(static_cast<double>(params.n));
    AssumptionReport rep{};
    rep.sparsity_cap_ok = params.beta >= std::log(2.0) / log_n;
    const double floor_term =
        1.0 / std::pow(log_n, (params.gamma - 0.5) / params.gamma);
    rep.signal_above_floor = std::max(params.beta, floor_term) < params.r;
    rep.signal_below_cap = params.r < params.r_max;
    rep.q_cap_ok =
        params.q <= std::min(1.0 / 24.0, 1.0 / (6.0 * params.z_lower));
    const AlgorithmConstants ac = algorithm_constants(params.z_lower, params.z_upper);
    rep.bc_decay_ok = 0.75 * ac.c_bc * params.q / std::log(1.0 / params.q) *
                          std::pow(static_cast<double>(params.n),
                                   1.0 - params.beta) >=
                      1.0;
    rep.n_min_lower = n_min_lower(params.z_lower, params.r_max);
    rep.n_min_upper = n_min_upper(params.z_upper, params.r_max);
    rep.n_above_lower = params.n > rep.n_min_lower;
    rep.n_above_upper = params.n > rep.n_min_upper;
    return rep;
}

RateReport rate_report(const TheoryParams& p) {
    RateReport rep{};
    rep.feasible = p.r > p.beta;
    rep.kappa_star =
        rep.feasible ? solve_kappa_star(p.beta, p.r, p.gamma) : kNan;
    rep.r_min = r_min(p.beta, p.kappa, p.n, p.z_lower);
    rep.r_min_capped = r_min_is_capped(p.beta, p.kappa, p.n);
    const CriticalThreshold tau =
        tau_min_checked(p.beta, p.kappa, p.n, p.gamma, p.z_lower);
    rep.tau_min = tau.value;
    rep.tau_min_degenerate = tau.degenerate;
    rep.in_critical_regime = p.r <= rep.r_min;
    rep.fnr_lower = fnr_lower_bound(p.beta, p.kappa, p.r, p.gamma, p.z_lower,
                                    p.z_upper, p.n);
    rep.fnr_upper = fnr_upper_bound(p.beta, p.q, p.r, p.gamma, p.z_lower,
                                    p.z_upper, p.n, Algorithm::bh);
    rep.prefactor_c = fnr_lower_prefactor(p.beta, p.gamma, p.z_lower);
    rep.n_min_lower = n_min_lower(p.z_lower, p.r_max);
    rep.n_min_upper = n_min_upper(p.z_upper, p.r_max);
    return rep;
}

}  // namespace fdrlab
