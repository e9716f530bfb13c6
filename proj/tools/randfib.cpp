// randfib: exact and Monte Carlo characteristics of the noisy recursion
// X_{n+1} = a X_n + b eta_{n-1} X_{n-1}. Every subcommand emits CSV with a
// commented manifest header; identical flags reproduce identical bodies.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "randfib/csvio.hpp"
#include "randfib/lyapunov.hpp"
#include "randfib/moments.hpp"
#include "randfib/montecarlo.hpp"
#include "randfib/perron.hpp"
#include "randfib/tail.hpp"
#include "randfib/ztable.hpp"
#include "verify.hpp"

namespace {

using namespace randfib;

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(spec);
        if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
            step <= 0.0) {
            throw OutOfRangeError("grid: expected start:stop:step with step > 0, got '" +
                                  spec + "'");
        }
        const long count = long(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count < 1 || count > 1000000) {
            throw OutOfRangeError("grid: bad point count");
        }
        for (long j = 0; j < count; ++j) out.push_back(start + double(j) * step);
        return out;
    }
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw OutOfRangeError("grid: no points in '" + spec + "'");
    return out;
}

void emit(const CsvWriter& csv, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        csv.write(std::cout);
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw Error("cannot open output file '" + out_path + "'");
    csv.write(os);
}

struct CommonOpts {
    double a = 0.5;
    double b = 0.6;
    double tol = 1e-10;
    std::string out = "-";
    std::uint64_t seed = 42;
    int threads = 0;
    std::string backend = "auto";
};

void add_model_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--a", o.a, "coefficient a in (0,1)")->required();
    cmd->add_option("--b", o.b, "coefficient b > 1-a")->required();
}

void add_out_flag(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out, "output CSV path ('-' = stdout)");
}

void add_seed_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG seed")->envname("RANDFIB_SEED");
    cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
    cmd->add_option("--backend", o.backend, "kernel backend: auto|scalar|avx2|neon");
}

std::string grid_to_string(const std::vector<double>& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ',';
        s += fmt_double(g[i]);
    }
    return s;
}

// ---- subcommand bodies ------------------------------------------------------

int cmd_gamma_curve(const CommonOpts& o, const std::string& grid_spec, bool check) {
    const std::vector<double> grid = parse_grid(grid_spec);
    for (double eps : grid) validate_params(o.a, o.b, eps);

    std::ostringstream args;
    args << "a=" << fmt_double(o.a) << " b=" << fmt_double(o.b)
         << " eps_grid=" << grid_to_string(grid) << " tol=" << fmt_double(o.tol);
    CsvWriter csv(make_manifest("gamma-curve", args.str(), o.seed),
                  {"eps", "gamma", "tail_bound"});

    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (double eps : grid) {
        const GammaResult g = gamma(validate_params(o.a, o.b, eps), o.tol);
        if (!(g.gamma < prev)) monotone = false;
        prev = g.gamma;
        csv.add_row({fmt_double(eps), fmt_double(g.gamma), fmt_double(g.tail_bound)});
    }
    emit(csv, o.out);
    if (check && !monotone) {
        std::cerr << "gamma-curve: --check failed, gamma not strictly decreasing\n";
        return 1;
    }
    return 0;
}

int cmd_critical_eps(const CommonOpts& o) {
    validate_params(o.a, o.b, 0.0);
    const CriticalEps ce = critical_epsilon(o.a, o.b, o.tol);
    std::cout << fmt_double(ce.eps_star) << "\n";

    std::ostringstream args;
    args << "a=" << fmt_double(o.a) << " b=" << fmt_double(o.b)
         << " tol=" << fmt_double(o.tol);
    CsvWriter csv(make_manifest("critical-eps", args.str(), o.seed),
                  {"a", "b", "eps_star", "bracket_lo", "bracket_hi", "gamma_mid"});
    csv.add_row({fmt_double(o.a), fmt_double(o.b), fmt_double(ce.eps_star),
                 fmt_double(ce.lo), fmt_double(ce.hi), fmt_double(ce.gamma_mid)});
    emit(csv, o.out);
    return 0;
}

int cmd_lambda_curve(const CommonOpts& o, const std::string& eps_spec,
                     const std::string& t_spec) {
    const std::vector<double> eps_grid = parse_grid(eps_spec);
    const std::vector<double> t_grid = parse_grid(t_spec);
    for (double eps : eps_grid) validate_params(o.a, o.b, eps);

    std::ostringstream args;
    args << "a=" << fmt_double(o.a) << " b=" << fmt_double(o.b)
         << " eps_grid=" << grid_to_string(eps_grid)
         << " t_grid=" << grid_to_string(t_grid) << " tol=" << fmt_double(o.tol);
    CsvWriter csv(make_manifest("lambda-curve", args.str(), o.seed),
                  {"eps", "t", "lambda", "K_used", "residual"});
    for (double eps : eps_grid) {
        const Params p = validate_params(o.a, o.b, eps);
        for (double t : t_grid) {
            const LambdaResult lr = lambda_function_full(p, t, o.tol);
            csv.add_row({fmt_double(eps), fmt_double(t), fmt_double(lr.value),
                         std::to_string(lr.k_used), fmt_double(lr.residual)});
        }
    }
    emit(csv, o.out);
    return 0;
}

int cmd_tail_curve(const CommonOpts& o, const std::string& eps_spec, bool mc,
                   std::size_t mc_n, std::size_t mc_m) {
    const std::vector<double> grid = parse_grid(eps_spec);
    for (double eps : grid) validate_params(o.a, o.b, eps);

    std::ostringstream args;
    args << "a=" << fmt_double(o.a) << " b=" << fmt_double(o.b)
         << " eps_grid=" << grid_to_string(grid) << " tol=" << fmt_double(o.tol)
         << " mc=" << (mc ? 1 : 0);
    std::vector<std::string> cols = {"eps", "s_series", "s_spectral", "abs_diff"};
    if (mc) {
        cols.push_back("hill_s");
        cols.push_back("hill_se");
    }
    CsvWriter csv(make_manifest("tail-curve", args.str(), o.seed), cols);

    for (double eps : grid) {
        const Params p = validate_params(o.a, o.b, eps);
        std::vector<std::string> row;
        row.push_back(fmt_double(eps));
        try {
            const TailExponent se = tail_exponent_series(p, o.tol);
            const TailExponent sp = tail_exponent_spectral(p, o.tol);
            row.push_back(fmt_double(se.s));
            row.push_back(fmt_double(sp.s));
            row.push_back(fmt_double(std::fabs(se.s - sp.s)));
            if (mc) {
                SimConfig cfg;
                cfg.params = p;
                cfg.n = mc_n;
                cfg.m = mc_m;
                cfg.seed = o.seed;
                cfg.threads = o.threads;
                cfg.backend = simd::parse_backend(o.backend);
                const SampleSet w = simulate_w(cfg);
                const std::size_t k =
                    std::max<std::size_t>(2, std::size_t(std::pow(double(cfg.m), 0.6)));
                const Estimate hill = hill_estimator(w, k);
                row.push_back(fmt_double(hill.value));
                row.push_back(fmt_double(hill.std_error));
            }
        } catch (const NoRootError&) {
            std::cerr << "tail-curve: eps=" << fmt_double(eps)
                      << " at or above critical noise, emitting NoRoot sentinel\n";
            row.push_back("NoRoot");
            row.push_back("NoRoot");
            row.push_back("NoRoot");
            if (mc) {
                row.push_back("NoRoot");
                row.push_back("NoRoot");
            }
        }
        csv.add_row(std::move(row));
    }
    emit(csv, o.out);
    return 0;
}

int cmd_moments(const CommonOpts& o, double eps, std::size_t n_max) {
    const Params p = validate_params(o.a, o.b, eps);
    std::ostringstream args;
    args << "a=" << fmt_double(o.a) << " b=" << fmt_double(o.b)
         << " eps=" << fmt_double(eps) << " N=" << n_max;
    CsvWriter csv(make_manifest("moments", args.str(), o.seed),
                  {"n", "mean", "second", "cassini", "oracle_mean", "oracle_second",
                   "rel_err"});

    const MomentTable table = moment_table(p, n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::vector<std::string> row;
        row.push_back(std::to_string(n));
        row.push_back(fmt_double(table.mean_x[n]));
        row.push_back(fmt_double(table.second_x[n]));
        row.push_back(n >= 1 ? fmt_double(table.cassini_h[n]) : "");
        if (n <= 16) {
            const MomentOracle oracle = brute_force_moments(p, n, 0);
            const double rel = std::max(
                std::fabs(table.mean_x[n] - oracle.mean) /
                    std::max(std::fabs(oracle.mean), 1e-300),
                std::fabs(table.second_x[n] - oracle.second) /
                    std::max(std::fabs(oracle.second), 1e-300));
            row.push_back(fmt_double(oracle.mean));
            row.push_back(fmt_double(oracle.second));
            row.push_back(fmt_double(rel));
        } else {
            row.push_back("");
            row.push_back("");
            row.push_back("");
        }
        csv.add_row(std::move(row));
    }
    emit(csv, o.out);
    return 0;
}

int cmd_simulate(const CommonOpts& o, double eps, std::size_t n, std::size_t m,
                 const std::string& kind, double x0, double x1,
                 const std::string& dump) {
    const Params p = validate_params(o.a, o.b, eps);
    SimConfig cfg;
    cfg.params = p;
    cfg.n = n;
    cfg.m = m;
    cfg.seed = o.seed;
    cfg.x0 = x0;
    cfg.x1 = x1;
    cfg.threads = o.threads;
    cfg.backend = simd::parse_backend(o.backend);

    std::ostringstream args;
    args << "a=" << fmt_double(o.a) << " b=" << fmt_double(o.b)
         << " eps=" << fmt_double(eps) << " n=" << n << " m=" << m
         << " kind=" << kind << " x0=" << fmt_double(x0)
         << " x1=" << fmt_double(cfg.initial_x1());
    CsvWriter csv(make_manifest("simulate", args.str(), o.seed),
                  {"eps", "n", "m", "seed", "gamma_hat", "gamma_se", "s_hill",
                   "s_hill_se", "K_hat"});

    std::vector<std::string> row = {fmt_double(eps), std::to_string(n),
                                    std::to_string(m), std::to_string(o.seed)};
    SampleSet samples;
    if (kind == "logx") {
        samples = simulate_log_x(cfg);
        double mean = 0.0;
        for (double v : samples.values) mean += v / double(n);
        mean /= double(m);
        double var = 0.0;
        for (double v : samples.values) {
            const double d = v / double(n) - mean;
            var += d * d;
        }
        var = (m > 1) ? var / double(m - 1) : 0.0;
        row.push_back(fmt_double(mean));
        row.push_back(fmt_double(std::sqrt(var / double(m))));
        row.push_back("");
        row.push_back("");
        row.push_back("");
    } else if (kind == "w") {
        samples = simulate_w(cfg);
        row.push_back("");
        row.push_back("");
        if (m >= 8) {
            const std::size_t k =
                std::max<std::size_t>(2, std::size_t(std::pow(double(m), 0.6)));
            const Estimate hill = hill_estimator(samples, k);
            row.push_back(fmt_double(hill.value));
            row.push_back(fmt_double(hill.std_error));
            const double qs[3] = {0.01, 0.005, 0.002};
            const TailConstant tc = tail_constant_estimate(samples, hill.value, qs);
            row.push_back(fmt_double(tc.pooled_median));
        } else {
            row.push_back("");
            row.push_back("");
            row.push_back("");
        }
    } else {
        throw OutOfRangeError("simulate: --kind must be logx or w");
    }
    csv.add_row(std::move(row));
    emit(csv, o.out);

    if (!dump.empty()) {
        std::ofstream os(dump);
        if (!os) throw Error("cannot open dump file '" + dump + "'");
        for (double v : samples.values) os << fmt_double(v) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randfib: growth and tail characteristics of randomly perturbed "
                 "Fibonacci-like recursions"};
    app.set_config("--config", "", "key=value file mirrored by flags (flags win)");
    app.require_subcommand(1);

    int rc = 0;
    std::function<int()> action;

    // gamma-curve
    {
        auto o = std::make_shared<CommonOpts>();
        auto grid = std::make_shared<std::string>("0:1:0.02");
        auto check = std::make_shared<bool>(false);
        CLI::App* cmd = app.add_subcommand(
            "gamma-curve", "Lyapunov exponent gamma(eps) over an eps grid");
        add_model_flags(cmd, *o);
        cmd->add_option("--eps-grid", *grid, "grid: start:stop:step or comma list");
        cmd->add_option("--tol", o->tol, "series tail tolerance");
        cmd->add_flag("--check", *check, "fail unless gamma is strictly decreasing");
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] {
            action = [=] { return cmd_gamma_curve(*o, *grid, *check); };
        });
        o->tol = 1e-12;
    }
    // critical-eps
    {
        auto o = std::make_shared<CommonOpts>();
        CLI::App* cmd = app.add_subcommand(
            "critical-eps", "critical noise eps*: the unique zero of gamma");
        add_model_flags(cmd, *o);
        cmd->add_option("--tol", o->tol, "bisection bracket width");
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] { action = [=] { return cmd_critical_eps(*o); }; });
    }
    // lambda-curve
    {
        auto o = std::make_shared<CommonOpts>();
        auto eps_grid = std::make_shared<std::string>("0.05,0.1");
        auto t_grid = std::make_shared<std::string>("0:3:0.25");
        CLI::App* cmd = app.add_subcommand(
            "lambda-curve", "Lambda_eps(t) via the tilted-kernel Perron root");
        add_model_flags(cmd, *o);
        cmd->add_option("--eps-grid", *eps_grid, "eps grid");
        cmd->add_option("--t-grid", *t_grid, "t grid");
        cmd->add_option("--tol", o->tol, "truncation stabilization tolerance");
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] {
            action = [=] { return cmd_lambda_curve(*o, *eps_grid, *t_grid); };
        });
    }
    // tail-curve
    {
        auto o = std::make_shared<CommonOpts>();
        auto eps_grid = std::make_shared<std::string>("0.02:0.12:0.02");
        auto mc = std::make_shared<bool>(false);
        auto mc_n = std::make_shared<std::size_t>(20000);
        auto mc_m = std::make_shared<std::size_t>(20000);
        CLI::App* cmd = app.add_subcommand(
            "tail-curve", "tail exponent s_eps by the series and spectral methods");
        add_model_flags(cmd, *o);
        cmd->add_option("--eps-grid", *eps_grid, "eps grid");
        cmd->add_option("--tol", o->tol, "root bracket width");
        cmd->add_flag("--mc", *mc, "append a Hill estimate from simulated W");
        cmd->add_option("--mc-n", *mc_n, "trajectory length for --mc");
        cmd->add_option("--mc-m", *mc_m, "trajectory count for --mc");
        add_seed_flags(cmd, *o);
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] {
            action = [=] { return cmd_tail_curve(*o, *eps_grid, *mc, *mc_n, *mc_m); };
        });
    }
    // moments
    {
        auto o = std::make_shared<CommonOpts>();
        auto eps = std::make_shared<double>(0.2);
        auto n_max = std::make_shared<std::size_t>(16);
        CLI::App* cmd = app.add_subcommand(
            "moments", "exact moment sequences with the enumeration oracle");
        add_model_flags(cmd, *o);
        cmd->add_option("--eps", *eps, "noise probability")->required();
        cmd->add_option("--n", *n_max, "table size N");
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] {
            action = [=] { return cmd_moments(*o, *eps, *n_max); };
        });
    }
    // simulate
    {
        auto o = std::make_shared<CommonOpts>();
        auto eps = std::make_shared<double>(0.2);
        auto n = std::make_shared<std::size_t>(20000);
        auto m = std::make_shared<std::size_t>(10000);
        auto kind = std::make_shared<std::string>("logx");
        auto x0 = std::make_shared<double>(1.0);
        auto x1 = std::make_shared<double>(-1.0);
        auto dump = std::make_shared<std::string>();
        CLI::App* cmd = app.add_subcommand(
            "simulate", "seeded Monte Carlo of log X_n or W_n with estimators");
        add_model_flags(cmd, *o);
        cmd->add_option("--eps", *eps, "noise probability")->required();
        cmd->add_option("--n", *n, "trajectory length");
        cmd->add_option("--m", *m, "number of trajectories");
        cmd->add_option("--kind", *kind, "logx | w");
        cmd->add_option("--x0", *x0, "initial X_0 (> 0)");
        cmd->add_option("--x1", *x1, "initial X_1 (> 0; default a)");
        cmd->add_option("--dump", *dump, "write one sample per line to this file");
        add_seed_flags(cmd, *o);
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] {
            action = [=] {
                return cmd_simulate(*o, *eps, *n, *m, *kind, *x0, *x1, *dump);
            };
        });
    }
    // verify
    {
        auto o = std::make_shared<CommonOpts>();
        CLI::App* cmd = app.add_subcommand(
            "verify", "run the invariant suite; nonzero exit on any failure");
        add_seed_flags(cmd, *o);
        add_out_flag(cmd, *o);
        cmd->callback([=, &action] {
            action = [=] {
                const simd::Backend be = simd::parse_backend(o->backend);
                if (o->out.empty() || o->out == "-") {
                    return randfib::tools::run_verify(o->seed, o->threads, be,
                                                      std::cout);
                }
                std::ofstream os(o->out);
                if (!os) throw Error("cannot open output file '" + o->out + "'");
                return randfib::tools::run_verify(o->seed, o->threads, be, os);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        rc = action ? action() : 2;
    } catch (const OutOfRangeError& e) {
        std::cerr << "constraint violation: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
