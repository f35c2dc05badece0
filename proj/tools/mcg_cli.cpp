#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mcg/config.hpp"
#include "mcg/csv.hpp"
#include "mcg/single_run.hpp"
#include "mcg/svg.hpp"
#include "mcg/sweep.hpp"

namespace {

unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

mcg::RunConfig config_or_defaults(const std::optional<std::string>& path) {
    if (path) return mcg::load_run_config(*path);
    mcg::RunConfig cfg{.params = mcg::reference_params(1.0)};
    return cfg;
}

std::string ensure_dir(const std::string& dir) {
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Memristor-circuit chaos toolbox: simulation, spectra, sweeps"};
    app.require_subcommand(1);

    long long seed = 0;  // reserved; all methods are deterministic
    app.add_option("--seed", seed, "Reserved (all methods deterministic)");

    std::optional<std::string> config_path;
    std::string out_dir = ".";
    unsigned workers = default_workers();
    double alpha_min = 0.001, alpha_max = 1.2, alpha_step = 0.01;

    CLI::App* simulate = app.add_subcommand("simulate", "Integrate and analyze one point");
    simulate->add_option("--config", config_path, "Config file (key=value or JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--out", out_dir, "Output directory");

    CLI::App* sweep = app.add_subcommand("sweep", "Bifurcation sweep over alpha");
    sweep->add_option("--config", config_path, "Config file for base parameters/settings")
        ->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--workers", workers, "Worker thread count");
    sweep->add_option("--alpha-min", alpha_min, "First alpha");
    sweep->add_option("--alpha-max", alpha_max, "Last alpha (inclusive)");
    sweep->add_option("--alpha-step", alpha_step, "Grid step");

    CLI::App* eigen = app.add_subcommand("eigen", "Origin eigenvalue table over alpha");
    eigen->add_option("--config", config_path, "Config file for base parameters");
    double e_min = 0.1, e_max = 10.0, e_step = 0.1;
    eigen->add_option("--alpha-min", e_min, "First alpha");
    eigen->add_option("--alpha-max", e_max, "Last alpha (inclusive)");
    eigen->add_option("--alpha-step", e_step, "Grid step");
    std::optional<std::string> eigen_out;
    eigen->add_option("--out", eigen_out, "Directory for eigen.csv");

    CLI::App* fit = app.add_subcommand("fit-thermistor",
                                       "Quadratic surrogate vs thermistor law R^2");
    double r0 = 60.0, beta = 3000.0, t0 = 270.0, t_min = 240.0, t_max = 300.0;
    int samples = 121;
    fit->add_option("--config", config_path, "Config with physical parameters");
    fit->add_option("--r0", r0, "Reference resistance");
    fit->add_option("--beta", beta, "Thermistor beta");
    fit->add_option("--t0", t0, "Reference temperature");
    fit->add_option("--t-min", t_min, "Grid start");
    fit->add_option("--t-max", t_max, "Grid end");
    fit->add_option("--samples", samples, "Grid size");
    std::optional<std::string> fit_out;
    fit->add_option("--out", fit_out, "Directory for fit.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "mcg: " << e.what() << "\n";
        return 1;
    }

    try {
        if (simulate->parsed()) {
            const mcg::RunConfig cfg = mcg::load_run_config(*config_path);
            mcg::run_single(cfg, ensure_dir(out_dir), std::cout);
        } else if (sweep->parsed()) {
            const mcg::RunConfig cfg = config_or_defaults(config_path);
            mcg::SweepSpec spec;
            spec.alpha_min = alpha_min;
            spec.alpha_max = alpha_max;
            spec.alpha_step = alpha_step;
            spec.base = cfg.params;
            spec.integration = cfg.integration;
            spec.lyapunov = cfg.lyapunov;
            spec.workers = workers;
            spec.zero_tol = cfg.zero_tol;
            spec.cluster_tol_rel = cfg.cluster_tol_rel;
            spec.sym_tol = cfg.sym_tol;
            const std::vector<mcg::SweepRow> rows = mcg::run_sweep(spec);
            ensure_dir(out_dir);
            mcg::write_bifurcation_csv(rows, out_dir + "/bifurcation.csv");
            mcg::write_analysis_csv(rows, out_dir + "/analysis.csv");
            mcg::write_svg_scatter(rows, {"Bifurcation diagram", "alpha", "z max"},
                                   out_dir + "/bifurcation.svg");
            std::cout << "rows=" << rows.size() << "\n";
            std::cout << "wrote=" << out_dir << "/bifurcation.csv\n";
            std::cout << "wrote=" << out_dir << "/analysis.csv\n";
            std::cout << "wrote=" << out_dir << "/bifurcation.svg\n";
        } else if (eigen->parsed()) {
            const mcg::RunConfig cfg = config_or_defaults(config_path);
            std::optional<std::string> csv_path;
            if (eigen_out) csv_path = ensure_dir(*eigen_out) + "/eigen.csv";
            mcg::run_eigen_table(cfg.params, e_min, e_max, e_step, std::cout, csv_path);
        } else if (fit->parsed()) {
            if (config_path) {
                const mcg::RunConfig cfg = mcg::load_run_config(*config_path);
                if (!cfg.physical) {
                    throw std::invalid_argument(
                        "fit-thermistor: config must use parameters=physical");
                }
                r0 = cfg.physical->r0;
                beta = cfg.physical->beta;
                t0 = cfg.physical->t0;
            }
            const mcg::ThermistorFit result =
                mcg::fit_thermistor(r0, beta, t0, t_min, t_max, samples);
            std::optional<std::string> csv_path;
            if (fit_out) csv_path = ensure_dir(*fit_out) + "/fit.csv";
            mcg::run_thermistor_fit(result, std::cout, csv_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "mcg: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
