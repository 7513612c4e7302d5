#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace fdrlab {

// Thrown when a computation requires the feasible regime r > beta.
class infeasible_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// gamma-distance |a^(1/gamma) - b^(1/gamma)|^gamma between nonnegative
// tail parameters; reduces to |a-b| at gamma = 1.
double gamma_distance(double a, double b, double gamma);

// Unique solution of kappa = gamma_distance(beta + kappa, r) on [0, r-beta):
// the optimal polynomial decay exponent of the combined FDR+FNR risk.
// Bisection on the residual, which is strictly decreasing on the bracket.
// Requires the feasible regime r > beta.
double solve_kappa_star(double beta, double r, double gamma, double tol = 1e-12);

// Conversions between a target FDR level q and its exponent kappa = log(1/q)/log n.
double kappa_from_q(double q, std::size_t n);
double q_from_kappa(double kappa, std::size_t n);

// Critical signal-strength boundary at target-FDR exponent kappa:
//   beta + kappa + log(1/(6 z_lower))/log n    if kappa below the branch point,
//   1 + log(1/(24 z_lower))/log n              otherwise.
double r_min(double beta, double kappa, std::size_t n, double z_lower);

// True when the second (capped) branch of r_min applies.
bool r_min_is_capped(double beta, double kappa, std::size_t n);

// The uncapped boundary expression beta + kappa + log(1/(6 z_lower))/log n,
// valid for all kappa.  This is the form the achievability analysis of the
// data-driven procedures actually controls.
double r_min_boundary(double beta, double kappa, std::size_t n, double z_lower);

// Critical observation-scale threshold (gamma * r_min * log n)^(1/gamma).
// A nonpositive r_min is reported as value 0 with the degenerate flag set.
struct CriticalThreshold {
    double value;
    bool degenerate;
};
CriticalThreshold tau_min_checked(double beta, double kappa, std::size_t n,
                                  double gamma, double z_lower);
double tau_min(double beta, double kappa, std::size_t n, double gamma,
               double z_lower);
double tau_min_from_q(double beta, double q, std::size_t n, double gamma,
                      double z_lower);

// Closed-form envelope for the FNR of the fixed threshold tau_min:
//   lower = zeta^(-2 x) / z_lower * n^(-D)        (1/2 when r <= r_min)
//   upper = (max{c,1/c} * zeta)^(2 x) / z_upper * n^(-D)
// with x = beta^((1-gamma)/gamma), zeta = max{6 z_lower, 1/(6 z_lower)},
// D = gamma_distance(beta + kappa, r), and c the scale between the target
// level used for the threshold and the one used for the exponent.
struct FnrBounds {
    double lower;
    double upper;
    bool critical;  // lower came from the 1/2 branch (r <= r_min)
};
FnrBounds fnr_bounds_at_tau(double beta, double kappa, double r, double gamma,
                            double z_lower, double z_upper, std::size_t n,
                            double scale_c = 1.0);

// Minimax lower bound on the FNR of any threshold procedure with
// FDR <= n^(-kappa): 1/32 on the critical band r in [beta, r_min], else
// c(beta, gamma) * n^(-D) with c = exp(-2 log(4 zeta) x) / z_lower.
double fnr_lower_bound(double beta, double kappa, double r, double gamma,
                       double z_lower, double z_upper, std::size_t n);

// The prefactor c(beta, gamma) of the non-critical branch above.
double fnr_lower_prefactor(double beta, double gamma, double z_lower);

struct AlgorithmConstants {
    double c_bh;  // z_upper / (36 z_lower)
    double c_bc;  // z_upper / (48 z_lower)
    double zeta;  // max{6 z_lower, 1/(6 z_lower)}
};
AlgorithmConstants algorithm_constants(double z_lower, double z_upper);

enum class Algorithm { bh, bc };

// FNR guarantee of the data-driven procedures at target FDR q:
//   2 * (zeta/c_A)^(2 x) / z_upper * n^(-D),  plus q for bc.
double fnr_upper_bound(double beta, double q, double r, double gamma,
                       double z_lower, double z_upper, std::size_t n,
                       Algorithm algorithm);

// Threshold that the data-driven procedure exceeds only with vanishing
// probability: tau at the uncapped boundary evaluated at the exponent of
// c_A * q.
double procedure_critical_threshold(double beta, double q, std::size_t n,
                                    double gamma, double z_lower, double z_upper,
                                    Algorithm algorithm);

// Rate-optimal target FDR q* = c_star * n^(-kappa_star); c_star must not
// exceed min{1/24, 1/(6 z_lower)}.
double optimal_q_star(double beta, double r, double gamma, std::size_t n,
                      double c_star, double z_lower = 1.0);

// Smallest sample size from which the analytic layer's probability bounds
// hold; computed from (z, r_max) alone.  Values beyond uint64 saturate.
std::uint64_t n_min_lower(double z_lower, double r_max);
std::uint64_t n_min_upper(double z_upper, double r_max);

// Parameter bundle for assumption checks and reports.
struct TheoryParams {
    double beta;
    double r;
    double gamma;
    double z_lower;
    double z_upper;
    double r_max;   // cap on r, in (0,1)
    double kappa;   // target-FDR exponent
    double q;       // n^(-kappa)
    std::size_t n;
};
TheoryParams theory_params_from_q(double beta, double r, double gamma,
                                  double z_lower, double z_upper, double r_max,
                                  double q, std::size_t n);
TheoryParams theory_params_from_kappa(double beta, double r, double gamma,
                                      double z_lower, double z_upper, double r_max,
                                      double kappa, std::size_t n);

// One boolean per named regularity condition, plus sample-size thresholds.
// Flags are advisory: nothing here throws on a violated condition.
struct AssumptionReport {
    bool sparsity_cap_ok;     // beta >= log 2 / log n  (pi1 <= 1/2)
    bool signal_above_floor;  // max{beta, log^{-(g-1/2)/g} n} < r
    bool signal_below_cap;    // r < r_max
    bool q_cap_ok;            // q <= min{1/24, 1/(6 z_lower)}
    bool bc_decay_ok;         // (3 c_bc / 4) * q/log(1/q) * n^(1-beta) >= 1
    std::uint64_t n_min_lower;
    std::uint64_t n_min_upper;
    bool n_above_lower;       // n > n_min_lower
    bool n_above_upper;       // n > n_min_upper
};
AssumptionReport check_assumptions(const TheoryParams& params);

// Analytic summary for one parameter point.
struct RateReport {
    double kappa_star;        // NaN when infeasible
    double r_min;
    double tau_min;
    bool feasible;            // r > beta
    bool in_critical_regime;  // r <= r_min
    bool r_min_capped;        // second branch of r_min taken
    bool tau_min_degenerate;  // r_min <= 0
    double fnr_lower;         // minimax lower bound value
    double fnr_upper;         // bh guarantee value
    double prefactor_c;       // c(beta, gamma) of the lower bound
    std::uint64_t n_min_lower;
    std::uint64_t n_min_upper;
};
RateReport rate_report(const TheoryParams& params);

}  // namespace fdrlab
