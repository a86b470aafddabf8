// Command-line front end: scenario sweeps, single-point runs, config
// validation, and the brute-force oracles.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "densewlan/contention.hpp"
#include "densewlan/harness.hpp"
#include "densewlan/io.hpp"
#include "densewlan/rng.hpp"
#include "densewlan/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitExperiment = 2;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    bool fast = false;
    bool paper_theta = false;
    std::uint64_t seed = 0;
    std::size_t realizations = 0;
    bool seed_set = false;
    bool realizations_set = false;
};

void add_common(CLI::App* app, CommonArgs& args) {
    app->add_option("--config", args.config_path, "flat key = value config file");
    app->add_option("--set", args.overrides, "override, key=value (file units)");
    app->add_option("--out", args.out_dir, "output directory");
    app->add_flag("--fast", args.fast, "1e3 realizations instead of 1e4");
    app->add_flag("--paper-theta", args.paper_theta,
                  "use the published erf closed form for Theta");
    app->add_option("--seed", args.seed, "base seed")->each([&](const std::string&) {
        args.seed_set = true;
    });
    app->add_option("--realizations", args.realizations, "realization count")
        ->each([&](const std::string&) { args.realizations_set = true; });
}

dw::NetworkConfig load_config(const CommonArgs& args) {
    dw::NetworkConfig cfg;
    if (!args.config_path.empty()) cfg = dw::io::parse_config_file(args.config_path);
    for (const auto& kv : args.overrides) dw::io::apply_override(cfg, kv);
    if (args.seed_set) cfg.seed = args.seed;
    return dw::validate(cfg);
}

dw::HarnessOptions harness_options(const CommonArgs& args) {
    dw::HarnessOptions opt;
    opt.model = args.paper_theta ? dw::ThetaModel::kPaperErf : dw::ThetaModel::kQuadrature;
    return opt;
}

int emit_experiment(const dw::Scenario& scenario, const CommonArgs& args) {
    try {
        const dw::ExperimentResult result = dw::run_experiment(scenario);
        std::filesystem::create_directories(args.out_dir);
        const std::string stem = args.out_dir + "/" + scenario.name;
        dw::io::emit_csv(result, stem + ".csv");
        dw::io::write_manifest(scenario, stem + ".manifest.json");
        std::cout << scenario.name << ": " << result.rows.size() << " rows, "
                  << result.failed_realizations << "/" << result.total_realizations
                  << " failed realizations, " << result.clamped_evaluations
                  << " clamped evaluations -> " << stem << ".csv\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "experiment failed: " << e.what() << "\n";
        return kExitExperiment;
    }
}

int cmd_validate(const CommonArgs& args) {
    try {
        const dw::NetworkConfig cfg = load_config(args);
        std::cout << "ok (config hash " << dw::io::config_content_hash(cfg) << ")\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitUsage;
    }
}

int cmd_sweep(const CommonArgs& args, const std::string& scenario_name) {
    dw::NetworkConfig cfg;
    try {
        cfg = load_config(args);
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitUsage;
    }
    dw::Scenario scenario;
    try {
        scenario = dw::make_scenario(scenario_name, cfg, args.fast, harness_options(args));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    if (args.realizations_set) scenario.n_realizations = args.realizations;
    return emit_experiment(scenario, args);
}

int cmd_run(const CommonArgs& args) {
    dw::NetworkConfig cfg;
    try {
        cfg = load_config(args);
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitUsage;
    }
    // Single-point comparison of every scheme at the base config.
    dw::Scenario s;
    s.name = "run";
    s.base = cfg;
    s.base_seed = cfg.seed;
    s.metric = dw::Metric::kSdt;
    s.sweep_param = "lambda_s";
    s.sweep_values = {cfg.lambda_s};
    s.schemes = {dw::Scheme::kSsf, dw::Scheme::kFdAssocFixedPcs, dw::Scheme::kJapo,
                 dw::Scheme::kHdJapo};
    s.options = harness_options(args);
    s.n_realizations = args.realizations_set ? args.realizations : (args.fast ? 1000 : 10000);
    return emit_experiment(s, args);
}

int cmd_oracle_thinning(double lambda, double radius, std::size_t n, double window,
                        std::uint64_t seed) {
    using namespace dw;
    const Window w{window, window};
    double hits = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const PointSet pts = sample_ppp(lambda, w, derive_seed(seed, i));
        Rng rng(derive_seed(seed ^ 0xBEEF, i));
        ThinningInput in;
        in.points = pts;
        in.cs_range = radius;
        in.marks.reserve(pts.points.size());
        for (std::size_t k = 0; k < pts.points.size(); ++k) in.marks.push_back(rng.uniform());
        const ThinningResult res = simulate_matern_thinning(in);
        // Interior nodes only; one carrier-sense radius from the boundary.
        std::vector<char> retained(pts.points.size(), 0);
        for (std::size_t idx : res.retained) retained[idx] = 1;
        for (std::size_t k = 0; k < pts.points.size(); ++k) {
            const auto& p = pts.points[k];
            if (p.x < radius || p.y < radius || p.x > window - radius || p.y > window - radius) {
                continue;
            }
            total += 1.0;
            hits += retained[k];
        }
    }
    if (total == 0.0) {
        std::cerr << "no interior points sampled\n";
        return kExitExperiment;
    }
    const double empirical = hits / total;
    const double theta = std::numbers::pi * radius * radius;
    const double analytic = access_probability(lambda, theta);
    std::printf("lambda=%g radius=%g (lambda*pi*R^2=%.4f) windows=%zu\n", lambda, radius,
                lambda * theta, n);
    std::printf("analytic retention  %.6f\n", analytic);
    std::printf("empirical retention %.6f  (interior samples %.0f)\n", empirical, total);
    std::printf("relative error      %.4f%%\n", 100.0 * (empirical - analytic) / analytic);
    return kExitOk;
}

int cmd_oracle_theta(double pcs_dbm, double alpha, double lambda) {
    using namespace dw;
    const double pcs = dbm_to_mw(pcs_dbm);
    const double quad = theta_numeric(pcs, alpha);
    const double gamma_form = theta_gamma_form(pcs, alpha);
    const double paper = theta_closed_form(pcs, mean_path_loss(lambda, alpha));
    const double paper_dist = theta_closed_form_distance_arg(pcs, paper_mean_nn(lambda));
    std::printf("pcs=%g dBm (%.3e mW) alpha=%g lambda=%g\n", pcs_dbm, pcs, alpha, lambda);
    std::printf("theta quadrature            %.10e\n", quad);
    std::printf("theta Gamma-function form   %.10e\n", gamma_form);
    std::printf("theta erf (path-loss arg)   %.10e\n", paper);
    std::printf("theta erf (distance arg)    %.10e\n", paper_dist);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"densewlan: dense full-duplex CSMA/CA WLAN model and optimizer"};
    app.require_subcommand(0, 1);

    CommonArgs run_args, sweep_args, validate_args;
    std::string scenario_name;

    CLI::App* run = app.add_subcommand("run", "all schemes at one operating point");
    add_common(run, run_args);

    CLI::App* sweep = app.add_subcommand("sweep", "named scenario sweep -> CSV + manifest");
    add_common(sweep, sweep_args);
    std::string names;
    for (const auto& n : dw::scenario_names()) names += n + " ";
    sweep->add_option("--scenario", scenario_name, "one of: " + names)->required();

    CLI::App* validate_cmd = app.add_subcommand("validate", "validate a config and exit");
    add_common(validate_cmd, validate_args);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
    CLI::App* thinning = oracle->add_subcommand("thinning", "Matern thinning vs closed form");
    double o_lambda = 0.5, o_radius = 0.8, o_window = 20.0;
    std::size_t o_n = 10000;
    std::uint64_t o_seed = 1;
    thinning->add_option("--lambda", o_lambda, "parent intensity");
    thinning->add_option("--radius", o_radius, "carrier-sense radius");
    thinning->add_option("-n,--realizations", o_n, "windows");
    thinning->add_option("--window", o_window, "square window side");
    thinning->add_option("--seed", o_seed, "base seed");
    CLI::App* theta = oracle->add_subcommand("theta", "Theta: quadrature vs closed forms");
    double t_pcs = -70.0, t_alpha = 3.4, t_lambda = 0.5;
    theta->add_option("--pcs", t_pcs, "PCS threshold, dBm");
    theta->add_option("--alpha", t_alpha, "path-loss exponent");
    theta->add_option("--lambda", t_lambda, "process intensity for the erf forms");
    oracle->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            return app.exit(e);
        }
        app.exit(e);
        return kExitUsage;
    }

    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return kExitUsage;
    }
    if (run->parsed()) return cmd_run(run_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args, scenario_name);
    if (validate_cmd->parsed()) return cmd_validate(validate_args);
    if (oracle->parsed()) {
        if (thinning->parsed()) {
            return cmd_oracle_thinning(o_lambda, o_radius, o_n, o_window, o_seed);
        }
        return cmd_oracle_theta(t_pcs, t_alpha, t_lambda);
    }
    std::cout << app.help();
    return kExitUsage;
}
