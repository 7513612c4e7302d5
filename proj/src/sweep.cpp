#include "fdrlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "fdrlab/theory.hpp"

namespace fdrlab {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

const char* procedure_name(Procedure p) {
    switch (p) {
        case Procedure::fixed: return "fixed";
        case Procedure::bh: return "bh";
        case Procedure::bc: return "bc";
    }
    return "?";
}

void validate(const SweepSpec& s) {
    if (s.n_values.empty() || s.r_values.empty() || s.gamma_values.empty())
        throw std::invalid_argument("sweep: empty grid axis");
    if (s.beta_values.empty() == s.pi1_values.empty())
        throw std::invalid_argument("sweep: exactly one of beta/pi1 axes required");
    if (s.trials < 2) throw std::invalid_argument("sweep: trials must be >= 2");
}

}  // namespace

void run_sweep(const SweepSpec& s, std::ostream& os) {
    validate(s);
    os << kCsvHeader << '\n';
    const bool use_pi1 = !s.pi1_values.empty();
    const std::vector<double>& sparsity = use_pi1 ? s.pi1_values : s.beta_values;

    std::uint64_t cell_index = 0;
    for (std::size_t n : s.n_values) {
        for (double sp : sparsity) {
            for (double r : s.r_values) {
                for (double gamma : s.gamma_values) {
                    const ProblemConfig cfg = use_pi1
                                                  ? config_from_pi1(n, sp, r, gamma)
                                                  : make_config(n, sp, r, gamma);
                    const DistributionSpec dist =
                        tgg_spec(gamma, s.z_lower, s.z_upper);
                    const bool feasible = cfg.r > cfg.beta;
                    const double kappa_star =
                        feasible ? solve_kappa_star(cfg.beta, cfg.r, gamma)
                                 : std::numeric_limits<double>::quiet_NaN();

                    double q_or_t = 0.0;
                    switch (s.procedure) {
                        case Procedure::fixed: q_or_t = s.threshold; break;
                        case Procedure::bh:
                        case Procedure::bc:
                            q_or_t = s.q_policy == SweepSpec::QPolicy::optimal
                                         ? optimal_q_star(cfg.beta, cfg.r, gamma,
                                                          n, s.c_star, s.z_lower)
                                         : s.q;
                            break;
                    }

                    const std::uint64_t seed =
                        substream_seed(s.master_seed, cell_index);
                    const RiskEstimate est =
                        estimate_risk(cfg, dist, s.procedure, q_or_t, s.trials,
                                      seed, s.threads);

                    // theory columns apply to the target-FDR procedures only
                    std::string predicted, tau_col, rmin_col;
                    if (s.procedure != Procedure::fixed) {
                        const double kappa = kappa_from_q(q_or_t, n);
                        predicted = format_real(std::min(
                            kappa, gamma_distance(cfg.beta + kappa, cfg.r, gamma)));
                        if (kappa < 1.0) {  // r_min is defined for kappa in (0,1)
                            tau_col = format_real(
                                tau_min(cfg.beta, kappa, n, gamma, s.z_lower));
                            rmin_col =
                                format_real(r_min(cfg.beta, kappa, n, s.z_lower));
                        }
                    }

                    os << n << ',' << format_real(cfg.beta) << ','
                       << format_real(cfg.r) << ',' << format_real(gamma) << ','
                       << procedure_name(s.procedure) << ','
                       << format_real(q_or_t) << ','
                       << (feasible ? format_real(kappa_star) : std::string())
                       << ',' << format_real(est.fdr) << ','
                       << format_real(est.fdr_se) << ',' << format_real(est.fnr)
                       << ',' << format_real(est.fnr_se) << ','
                       << format_real(est.risk) << ',' << predicted << ','
                       << tau_col << ',' << rmin_col << ','
                       << (feasible ? "true" : "false") << ',' << s.trials << ','
                       << seed << '\n';
                    ++cell_index;
                }
            }
        }
    }
}

void write_fixed_point_curves(const Figure1Spec& spec, std::ostream& os) {
    if (spec.beta_values.empty() || spec.r_values.empty() ||
        spec.gamma_values.empty() || spec.kappa_points < 2)
        throw std::invalid_argument("figure1: empty grid axis");
    os << "beta,r,gamma,kappa,lhs,rhs\n";
    for (double gamma : spec.gamma_values) {
        for (double beta : spec.beta_values) {
            for (double r : spec.r_values) {
                if (!(r > beta)) continue;
                const double ks = solve_kappa_star(beta, r, gamma);
                std::vector<double> grid;
                grid.reserve(spec.kappa_points + 1);
                const double span = r - beta;
                for (std::size_t i = 0; i < spec.kappa_points; ++i)
                    grid.push_back(span * static_cast<double>(i) /
                                   static_cast<double>(spec.kappa_points - 1));
                grid.push_back(ks);
                std::sort(grid.begin(), grid.end());
                for (double kappa : grid) {
                    const double rhs = gamma_distance(beta + kappa, r, gamma);
                    os << format_real(beta) << ',' << format_real(r) << ','
                       << format_real(gamma) << ',' << format_real(kappa) << ','
                       << format_real(kappa) << ',' << format_real(rhs) << '\n';
                }
            }
        }
    }
}

void write_kappa_star_plane(const Figure1Spec& spec, std::ostream& os) {
    if (spec.beta_values.empty() || spec.r_values.empty() ||
        spec.gamma_values.empty())
        throw std::invalid_argument("figure1: empty grid axis");
    os << "r,beta,gamma,kappa_star\n";
    for (double gamma : spec.gamma_values) {
        for (double r : spec.r_values) {
            for (double beta : spec.beta_values) {
                os << format_real(r) << ',' << format_real(beta) << ','
                   << format_real(gamma) << ',';
                if (r > beta)
                    os << format_real(solve_kappa_star(beta, r, gamma));
                os << '\n';
            }
        }
    }
}

std::map<std::string, std::string> parse_key_value_config(std::istream& is) {
    std::map<std::string, std::string> out;
    std::string line;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value': " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key in line: " + line);
        out[key] = value;
    }
    return out;
}

}  // namespace fdrlab
