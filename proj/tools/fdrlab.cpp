// fdrlab: simulation lab and rate calculator for sparse multiple testing
// with FDR control.  Subcommands: solve, simulate, figure1, verify.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdrlab/sweep.hpp"
#include "fdrlab/theory.hpp"
#include "fdrlab/verify.hpp"

namespace {

using namespace fdrlab;

constexpr const char* kUsage =
    "usage: fdrlab <command> [flags]\n"
    "\n"
    "commands:\n"
    "  solve     solve the rate fixed point and print the analytic report\n"
    "  simulate  run a Monte-Carlo sweep over a parameter grid, emit CSV\n"
    "  figure1   emit fixed-point curve and kappa* plane CSV files\n"
    "  verify    run named verification suites (or 'all')\n"
    "\n"
    "common flags:\n"
    "  --config PATH        key = value file; command-line flags override it\n"
    "  --z-lower V          lower tail constant (default 2, the sampler's)\n"
    "  --z-upper V          upper tail constant (default 2)\n"
    "\n"
    "solve:     --beta B --r R --gamma G [--n N (--q Q | --kappa K)] [--r-max V]\n"
    "simulate:  --n LIST (--beta LIST | --pi1 LIST) --r LIST --gamma LIST\n"
    "           --procedure {fixed,bh,bc} (--q Q | --c-star C | --threshold T)\n"
    "           --trials T --seed S [--out PATH] [--threads N]\n"
    "figure1:   [--beta LIST] [--r LIST] [--gamma LIST] [--kappa-points N]\n"
    "           [--out PREFIX]\n"
    "verify:    SUITE... | all  [--threads N]\n"
    "\n"
    "exit codes: 0 success, 1 usage or I/O error, 2 infeasible parameters\n";

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parsed flag map; config-file values fill in flags not given on the line.
struct Args {
    std::map<std::string, std::string> values;
    std::vector<std::string> positional;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    std::string str(const std::string& key) const { return values.at(key); }

    double real(const std::string& key) const {
        const std::string& s = values.at(key);
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(s.c_str(), &end);
        if (errno != 0 || end == s.c_str() || *end != '\0')
            throw usage_error("bad value for --" + key + ": " + s);
        return v;
    }

    std::size_t count(const std::string& key) const {
        const std::string& s = values.at(key);
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
        if (errno != 0 || end == s.c_str() || *end != '\0' ||
            s.find('-') != std::string::npos)
            throw usage_error("bad value for --" + key + ": " + s);
        return static_cast<std::size_t>(v);
    }

    std::vector<double> real_list(const std::string& key) const {
        std::vector<double> out;
        std::stringstream ss(values.at(key));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(tok.c_str(), &end);
            if (errno != 0 || end == tok.c_str() || *end != '\0')
                throw usage_error("bad list value for --" + key + ": " + tok);
            out.push_back(v);
        }
        if (out.empty()) throw usage_error("empty list for --" + key);
        return out;
    }

    std::vector<std::size_t> count_list(const std::string& key) const {
        std::vector<std::size_t> out;
        for (double v : real_list(key)) {
            if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
                throw usage_error("bad integer list for --" + key);
            out.push_back(static_cast<std::size_t>(v));
        }
        return out;
    }

    double real_or(const std::string& key, double fallback) const {
        return has(key) ? real(key) : fallback;
    }
    std::size_t count_or(const std::string& key, std::size_t fallback) const {
        return has(key) ? count(key) : fallback;
    }
};

Args parse_args(int argc, char** argv, int first) {
    Args args;
    for (int i = first; i < argc; ++i) {
        std::string tok = argv[i];
        if (tok.rfind("--", 0) == 0) {
            const std::string key = tok.substr(2);
            if (key.empty()) throw usage_error("malformed flag: " + tok);
            if (i + 1 >= argc) throw usage_error("missing value for --" + key);
            args.values[key] = argv[++i];
        } else {
            args.positional.push_back(tok);
        }
    }
    if (args.has("config")) {
        std::ifstream in(args.str("config"));
        if (!in) throw std::runtime_error("cannot read config file: " +
                                          args.str("config"));
        for (const auto& [key, value] : parse_key_value_config(in))
            args.values.emplace(key, value);  // flags win over file entries
    }
    return args;
}

void print_kv(const char* key, double v) {
    std::printf("%s=%s\n", key, format_real(v).c_str());
}
void print_kv(const char* key, const char* v) { std::printf("%s=%s\n", key, v); }
void print_kv(const char* key, bool v) { print_kv(key, v ? "true" : "false"); }
void print_kv(const char* key, std::uint64_t v) {
    std::printf("%s=%llu\n", key, static_cast<unsigned long long>(v));
}

int cmd_solve(const Args& args) {
    for (const char* req : {"beta", "r", "gamma"})
        if (!args.has(req)) throw usage_error(std::string("solve: --") + req +
                                              " is required");
    const double beta = args.real("beta");
    const double r = args.real("r");
    const double gamma = args.real("gamma");
    const double zl = args.real_or("z-lower", kConstructiveTailConstant);
    const double zu = args.real_or("z-upper", kConstructiveTailConstant);
    const double r_max = args.real_or("r-max", 0.9);

    if (!(r > beta)) {
        std::fprintf(stderr, "infeasible: r <= beta (r=%g, beta=%g)\n", r, beta);
        return 2;
    }
    print_kv("beta", beta);
    print_kv("r", r);
    print_kv("gamma", gamma);
    print_kv("feasible", true);
    print_kv("kappa_star", solve_kappa_star(beta, r, gamma));

    const bool have_level = args.has("q") || args.has("kappa");
    if (args.has("n") && have_level) {
        const std::size_t n = args.count("n");
        const TheoryParams params =
            args.has("q")
                ? theory_params_from_q(beta, r, gamma, zl, zu, r_max,
                                       args.real("q"), n)
                : theory_params_from_kappa(beta, r, gamma, zl, zu, r_max,
                                           args.real("kappa"), n);
        const RateReport rep = rate_report(params);
        print_kv("n", static_cast<std::uint64_t>(n));
        print_kv("q", params.q);
        print_kv("kappa", params.kappa);
        print_kv("r_min", rep.r_min);
        print_kv("r_min_capped", rep.r_min_capped);
        print_kv("tau_min", rep.tau_min);
        print_kv("tau_min_degenerate", rep.tau_min_degenerate);
        print_kv("in_critical_regime", rep.in_critical_regime);
        print_kv("fnr_lower", rep.fnr_lower);
        print_kv("fnr_upper_bh", rep.fnr_upper);
        print_kv("fnr_upper_bc",
                 fnr_upper_bound(beta, params.q, r, gamma, zl, zu, n,
                                 Algorithm::bc));
        print_kv("prefactor_c", rep.prefactor_c);
        print_kv("n_min_lower", rep.n_min_lower);
        print_kv("n_min_upper", rep.n_min_upper);
        const AssumptionReport as = check_assumptions(params);
        print_kv("assume_sparsity_cap", as.sparsity_cap_ok);
        print_kv("assume_signal_above_floor", as.signal_above_floor);
        print_kv("assume_signal_below_cap", as.signal_below_cap);
        print_kv("assume_q_cap", as.q_cap_ok);
        print_kv("assume_bc_decay", as.bc_decay_ok);
        print_kv("assume_n_above_lower", as.n_above_lower);
        print_kv("assume_n_above_upper", as.n_above_upper);
    } else if (args.has("n") || have_level) {
        throw usage_error("solve: --n and one of --q/--kappa must be given together");
    }
    return 0;
}

int cmd_simulate(const Args& args) {
    SweepSpec s;
    for (const char* req : {"n", "r", "gamma", "trials", "seed"})
        if (!args.has(req)) throw usage_error(std::string("simulate: --") + req +
                                              " is required");
    if (args.has("beta") == args.has("pi1"))
        throw usage_error("simulate: exactly one of --beta/--pi1 is required");
    s.n_values = args.count_list("n");
    if (args.has("beta")) s.beta_values = args.real_list("beta");
    if (args.has("pi1")) s.pi1_values = args.real_list("pi1");
    s.r_values = args.real_list("r");
    s.gamma_values = args.real_list("gamma");
    s.trials = args.count("trials");
    s.master_seed = args.count("seed");
    s.z_lower = args.real_or("z-lower", kConstructiveTailConstant);
    s.z_upper = args.real_or("z-upper", kConstructiveTailConstant);
    s.threads = static_cast<int>(args.count_or("threads", 0));

    const std::string proc = args.has("procedure") ? args.str("procedure") : "bh";
    if (proc == "fixed") {
        s.procedure = Procedure::fixed;
        if (!args.has("threshold"))
            throw usage_error("simulate: --threshold is required for fixed");
        if (args.has("q") || args.has("c-star"))
            throw usage_error("simulate: --q/--c-star do not apply to fixed");
        s.threshold = args.real("threshold");
    } else if (proc == "bh" || proc == "bc") {
        if (args.has("threshold"))
            throw usage_error("simulate: --threshold applies to fixed only");
        s.procedure = proc == "bh" ? Procedure::bh : Procedure::bc;
        if (args.has("q") == args.has("c-star"))
            throw usage_error("simulate: exactly one of --q/--c-star is required");
        if (args.has("q")) {
            s.q_policy = SweepSpec::QPolicy::fixed;
            s.q = args.real("q");
        } else {
            s.q_policy = SweepSpec::QPolicy::optimal;
            s.c_star = args.real("c-star");
        }
    } else {
        throw usage_error("simulate: --procedure must be fixed, bh or bc");
    }

    if (args.has("out")) {
        std::ofstream out(args.str("out"), std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " +
                                           args.str("out"));
        run_sweep(s, out);
        if (!out) throw std::runtime_error("write failed: " + args.str("out"));
    } else {
        run_sweep(s, std::cout);
    }
    return 0;
}

int cmd_figure1(const Args& args) {
    Figure1Spec spec;
    const auto default_grid = [] {
        std::vector<double> g;
        for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
        return g;
    };
    spec.beta_values = args.has("beta") ? args.real_list("beta") : default_grid();
    spec.r_values = args.has("r") ? args.real_list("r") : default_grid();
    spec.gamma_values =
        args.has("gamma") ? args.real_list("gamma") : std::vector<double>{1.0, 2.0};
    spec.kappa_points = args.count_or("kappa-points", 101);

    const std::string prefix = args.has("out") ? args.str("out") : "figure1";
    const std::string curves_path = prefix + "_curves.csv";
    const std::string plane_path = prefix + "_plane.csv";
    std::ofstream curves(curves_path, std::ios::binary);
    if (!curves) throw std::runtime_error("cannot open output file: " + curves_path);
    write_fixed_point_curves(spec, curves);
    if (!curves) throw std::runtime_error("write failed: " + curves_path);
    std::ofstream plane(plane_path, std::ios::binary);
    if (!plane) throw std::runtime_error("cannot open output file: " + plane_path);
    write_kappa_star_plane(spec, plane);
    if (!plane) throw std::runtime_error("write failed: " + plane_path);
    std::printf("wrote %s\nwrote %s\n", curves_path.c_str(), plane_path.c_str());
    return 0;
}

int cmd_verify(const Args& args) {
    if (args.positional.empty())
        throw usage_error("verify: give suite names or 'all'");
    const int threads = static_cast<int>(args.count_or("threads", 0));
    std::vector<std::string> suites;
    if (args.positional.size() == 1 && args.positional[0] == "all") {
        suites = verify_suite_names();
    } else {
        for (const std::string& name : args.positional) {
            const auto& known = verify_suite_names();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw usage_error("verify: unknown suite: " + name);
            suites.push_back(name);
        }
    }
    bool all_passed = true;
    for (const std::string& name : suites) {
        const CheckResult res = run_verify_suite(name, threads);
        all_passed = all_passed && res.passed;
        std::printf("%s %s (%.2fs): %s\n", res.passed ? "PASS" : "FAIL",
                    res.name.c_str(), res.seconds, res.detail.c_str());
        std::fflush(stdout);
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fputs(kUsage, stderr);
        return 1;
    }
    const std::string cmd = argv[1];
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
        std::fputs(kUsage, stdout);
        return 0;
    }
    try {
        const Args args = parse_args(argc, argv, 2);
        if (cmd == "solve") return cmd_solve(args);
        if (cmd == "simulate") return cmd_simulate(args);
        if (cmd == "figure1") return cmd_figure1(args);
        if (cmd == "verify") return cmd_verify(args);
        throw usage_error("unknown command: " + cmd);
    } catch (const usage_error& e) {
        std::fprintf(stderr, "error: %s\n\n%s", e.what(), kUsage);
        return 1;
    } catch (const infeasible_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
