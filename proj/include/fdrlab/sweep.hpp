#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fdrlab/metrics.hpp"

namespace fdrlab {

// Grid specification for `simulate`.  Exactly one of beta_values /
// pi1_values must be non-empty.  Cells run in nested grid order
// n x sparsity x r x gamma; each cell gets the substream seed
// (master_seed, cell_index), so output is deterministic no matter how
// trials are scheduled.
struct SweepSpec {
    std::vector<std::size_t> n_values;
    std::vector<double> beta_values;
    std::vector<double> pi1_values;
    std::vector<double> r_values;
    std::vector<double> gamma_values;
    Procedure procedure = Procedure::bh;
    enum class QPolicy { fixed, optimal } q_policy = QPolicy::fixed;
    double q = 0.1;              // fixed policy
    double c_star = 1.0 / 24.0;  // optimal policy: q = c_star * n^(-kappa_star)
    double threshold = 0.0;      // fixed-threshold procedure
    std::size_t trials = 2;
    std::uint64_t master_seed = 0;
    double z_lower = kConstructiveTailConstant;
    double z_upper = kConstructiveTailConstant;
    int threads = 0;  // 0 = hardware concurrency, 1 = serial
};

inline constexpr const char* kCsvHeader =
    "n,beta,r,gamma,procedure,q,kappa_star,fdr,fdr_se,fnr,fnr_se,risk,"
    "predicted_risk_exponent,tau_min,r_min,feasible,trials,seed";

// Runs the grid and writes one CSV row per cell (plus the header).  Reals
// carry 17 significant digits; reruns with the same spec are byte-identical.
void run_sweep(const SweepSpec& spec, std::ostream& os);

// Grids for the fixed-point visualizations.
struct Figure1Spec {
    std::vector<double> beta_values;
    std::vector<double> r_values;
    std::vector<double> gamma_values;
    std::size_t kappa_points = 101;
};

// (a) columns beta,r,gamma,kappa,lhs,rhs per feasible combination; the
// kappa grid covers [0, r-beta] and always contains kappa_star itself.
void write_fixed_point_curves(const Figure1Spec& spec, std::ostream& os);

// (b) columns r,beta,gamma,kappa_star over the (r, beta) plane;
// kappa_star is blank when r <= beta.
void write_kappa_star_plane(const Figure1Spec& spec, std::ostream& os);

// `key = value` configuration lines; '#' starts a comment.  Unknown keys
// are preserved (the CLI validates).  Later duplicates win.
std::map<std::string, std::string> parse_key_value_config(std::istream& is);

// 17-significant-digit decimal rendering used for every real in CSV output.
std::string format_real(double v);

}  // namespace fdrlab
