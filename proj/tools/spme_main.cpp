// Command line front end: single-trajectory simulation, extinction
// ensembles, the embedding-constant sweep, bound tables, and the
// lambda/dt refinement study.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "spme/report.hpp"
#include "spme/run_config.hpp"

namespace fs = std::filesystem;
using namespace spme;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    bool record = false;
};

config::RunConfig load(const CommonOpts& opts) {
    auto cfg = config::parse_config_file(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.out_dir) cfg.out_dir = *opts.out_dir;
    return cfg;
}

std::ofstream open_output(const config::RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    fs::path p = fs::path(cfg.out_dir) / name;
    std::ofstream out(p);
    if (!out) throw config::ConfigError("cannot write " + p.string());
    return out;
}

int cmd_simulate(const CommonOpts& opts) {
    auto run = load(opts);
    auto cfg = run.solver_config();
    cfg.record_fields = opts.record;
    auto x0 = extinction::soc_shift(run.initial_field(), run.x_c);
    noise::RngStream rng{run.seed, 0, 0};

    auto traj = solver::integrate_trajectory(cfg, x0, rng);

    if (opts.record) {
        auto csv = open_output(run, "trajectory.csv");
        report::write_trajectory_csv(csv, traj);
    }
    auto summary = report::trajectory_summary(traj, cfg, run);
    auto out = open_output(run, "summary.json");
    out << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << std::endl;
    return kExitOk;
}

int cmd_ensemble(const CommonOpts& opts) {
    auto run = load(opts);
    auto cfg = run.solver_config();
    auto ext = run.extinction_config();
    auto x0 = extinction::soc_shift(run.initial_field(), run.x_c);

    auto result = extinction::run_ensemble(cfg, ext, x0, run.seed);

    auto json = report::ensemble_summary(result, run);
    auto out = open_output(run, "ensemble.json");
    out << json.dump(2) << '\n';
    auto csv = open_output(run, "extinction_times.csv");
    report::write_extinction_times_csv(csv, result);

    std::cout << "gamma_est=" << result.gamma_est << " c_n=" << result.c_n
              << " admissible=" << (result.admissible ? "yes" : "no") << '\n';
    for (const auto& hr : result.horizons) {
        std::cout << "n=" << hr.horizon << "  p_hat=" << hr.p_hat << "  ci=["
                  << hr.ci_lo << ", " << hr.ci_hi << "]  bound=" << hr.bound
                  << '\n';
    }
    if (result.aborted > 0) {
        std::cerr << result.aborted << " trajectories aborted\n";
        return kExitSolver;
    }
    return kExitOk;
}

int cmd_gamma(int n_max) {
    if (n_max < 2) throw config::ConfigError("gamma sweep needs n >= 2");
    std::cout << "n,gamma_est\n";
    for (int n = 25; n < n_max; n *= 2) {
        std::cout << n << ',' << hspace::estimate_gamma(n) << '\n';
    }
    std::cout << n_max << ',' << hspace::estimate_gamma(n_max) << '\n';
    return kExitOk;
}

int cmd_bound(double x_norm, double rho, double gamma, double c_n,
              const std::vector<double>& horizons) {
    std::cout << "n,bound\n";
    for (double n : horizons) {
        std::cout << n << ','
                  << extinction::extinction_bound(x_norm, rho, gamma, c_n, n)
                  << '\n';
    }
    return kExitOk;
}

int cmd_convergence(const CommonOpts& opts) {
    auto run = load(opts);
    auto x0 = extinction::soc_shift(run.initial_field(), run.x_c);

    auto make = [&](double lambda, double dt) {
        auto cfg = run.solver_config();
        cfg.lambda = lambda;
        cfg.dt = dt;
        cfg.record_fields = true;
        cfg.record_stride = 1;
        cfg.stop_at_extinction = false;  // shared time mesh
        return cfg;
    };

    // lambda refinement, shared noise path
    const std::vector<double> lambdas{1e-1, 1e-2, 1e-3};
    std::vector<solver::Trajectory> trajs;
    for (double l : lambdas) {
        trajs.push_back(solver::integrate_trajectory(make(l, run.dt), x0,
                                                     noise::RngStream{run.seed, 0, 0}));
    }
    std::cout << "lambda refinement (L2(0,T;L2) Cauchy increments):\n";
    for (std::size_t i = 0; i + 1 < trajs.size(); ++i) {
        std::cout << "  |X(" << lambdas[i] << ") - X(" << lambdas[i + 1]
                  << ")| = " << solver::l2_time_difference(trajs[i], trajs[i + 1], run.dt)
                  << '\n';
    }

    // dt refinement on the deterministic flow: dyadic levels share no common
    // noise mesh, so the noise is switched off for this comparison
    std::cout << "dt refinement (final-time L2 differences, noise off):\n";
    std::vector<double> dts{run.dt, run.dt / 2, run.dt / 4};
    std::vector<hspace::Field> finals;
    for (double dt : dts) {
        auto cfg = make(run.lambda, dt);
        cfg.noise = noise::NoiseModel(x0.grid, {});
        auto t = solver::integrate_trajectory(cfg, x0,
                                              noise::RngStream{run.seed, 0, 0});
        finals.push_back(t.fields.back());
    }
    for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
        hspace::Field diff = finals[i];
        for (int j = 0; j < diff.grid.n; ++j) diff.values[j] -= finals[i + 1].values[j];
        std::cout << "  |X(dt=" << dts[i] << ") - X(dt=" << dts[i + 1]
                  << ")|_2 = " << hspace::lp_norm(diff, 2.0) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-D stochastic porous media equation laboratory"};
    app.require_subcommand(0, 1);

    bool print_defaults = false;
    app.add_flag("--print-defaults", print_defaults,
                 "print the default config file and exit");

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub, bool with_record) {
        sub->add_option("--config", opts.config_path, "config file path")->required();
        sub->add_option("--seed", opts.seed, "override the config seed");
        sub->add_option("--out", opts.out_dir, "output directory");
        if (with_record) {
            sub->add_flag("--record", opts.record, "write per-trajectory CSV");
        }
    };

    auto* simulate = app.add_subcommand("simulate", "run one trajectory");
    add_common(simulate, true);
    auto* ensemble = app.add_subcommand("ensemble", "run an extinction ensemble");
    add_common(ensemble, false);

    auto* gamma = app.add_subcommand("gamma", "embedding constant sweep");
    int gamma_n = 2000;
    gamma->add_option("--n", gamma_n, "largest grid size");

    auto* bound = app.add_subcommand("bound", "extinction bound table");
    double b_xnorm = 0.1, b_rho = 1.0, b_gamma = 1.1284, b_cn = 0.0;
    std::vector<double> b_horizons{0.05, 0.1, 0.2, 0.5, 1.0};
    bound->add_option("--xnorm", b_xnorm, "initial H^-1 norm");
    bound->add_option("--rho", b_rho, "sign coefficient");
    bound->add_option("--gamma", b_gamma, "embedding constant");
    bound->add_option("--cn", b_cn, "noise constant C_N");
    bound->add_option("--horizons", b_horizons, "horizon list");

    auto* convergence = app.add_subcommand("convergence", "lambda/dt refinement study");
    add_common(convergence, false);

    CLI11_PARSE(app, argc, argv);

    if (print_defaults) {
        std::cout << config::default_config_text();
        return kExitOk;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(opts);
        if (ensemble->parsed()) return cmd_ensemble(opts);
        if (gamma->parsed()) return cmd_gamma(gamma_n);
        if (bound->parsed()) return cmd_bound(b_xnorm, b_rho, b_gamma, b_cn, b_horizons);
        if (convergence->parsed()) return cmd_convergence(opts);
    } catch (const config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const solver::StepError& e) {
        std::cerr << "solver error: " << e.what() << " (residual " << e.residual()
                  << ")\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitConfig;
}
