// Black-box smoke test of the mcg command-line tool. Run as:
//   test_cli <path-to-mcg-binary> <scratch-dir>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mcg/csv.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAIL: " << what << "\n";
        ++failures;
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool mentions(const fs::path& p, const std::string& needle) {
    return slurp(p).find(needle) != std::string::npos;
}

struct Cli {
    std::string binary;
    fs::path dir;

    int run(const std::string& args, const std::string& tag) const {
        const fs::path out = dir / (tag + ".out");
        const fs::path err = dir / (tag + ".err");
        const std::string cmd =
            binary + " " + args + " > " + out.string() + " 2> " + err.string();
        const int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    }
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: test_cli <mcg-binary> <scratch-dir>\n";
        return 2;
    }
    const Cli cli{argv[1], fs::path(argv[2])};
    fs::remove_all(cli.dir);
    fs::create_directories(cli.dir);

    // a fast configuration: full parameter set, shortened horizons
    const fs::path cfg = cli.dir / "run.cfg";
    std::ofstream(cfg) << "parameters = model\n"
                          "alpha = 0.26\n"
                          "eta = 12.2\n"
                          "a = -6\n"
                          "b = 3\n"
                          "mu = 3\n"
                          "gamma = -2\n"
                          "theta = 3\n"
                          "epsilon = 0.6\n"
                          "t_end = 300\n"
                          "t_skip = 100\n"
                          "lce_transient = 100\n"
                          "lce_averaging = 500\n";

    // simulate: labeled report on stdout plus trajectory artifacts
    {
        const fs::path out_dir = cli.dir / "sim";
        const int rc = cli.run("simulate --config " + cfg.string() + " --out " +
                                   out_dir.string(),
                               "simulate");
        expect(rc == 0, "simulate exits 0, got " + std::to_string(rc));
        const fs::path report = cli.dir / "simulate.out";
        expect(mentions(report, "alpha=0.26"), "simulate echoes alpha");
        const std::string text = slurp(report);
        const auto l1_pos = text.find("lambda1=");
        expect(l1_pos != std::string::npos, "simulate reports lambda1");
        if (l1_pos != std::string::npos) {
            const double l1 = std::strtod(text.c_str() + l1_pos + 8, nullptr);
            expect(std::abs(l1 + 0.6) < 1e-12, "lambda1 is -epsilon");
        }
        expect(mentions(report, "alpha_star="), "simulate reports the threshold");
        expect(mentions(report, "class="), "simulate reports a classification");
        expect(mentions(report, "ky_dim="), "simulate reports the dimension");

        const fs::path traj = out_dir / "trajectory.csv";
        expect(fs::exists(traj), "simulate writes trajectory.csv");
        try {
            const mcg::Trajectory back = mcg::parse_trajectory_csv(traj.string());
            expect(back.t.size() > 100, "trajectory has a useful sample count");
        } catch (const std::exception& e) {
            expect(false, std::string("trajectory.csv parses: ") + e.what());
        }
        expect(fs::exists(out_dir / "phase_xy.svg"), "simulate writes phase_xy.svg");
        expect(fs::exists(out_dir / "series_tz.svg"), "simulate writes series_tz.svg");
    }

    // simulate with a broken config: one-line diagnostic, nonzero exit
    {
        const fs::path broken = cli.dir / "broken.cfg";
        std::ofstream(broken) << "parameters = model\nalpha = 0.26\n";
        const int rc =
            cli.run("simulate --config " + broken.string() + " --out " + cli.dir.string(),
                    "broken");
        expect(rc != 0, "broken config exits nonzero");
        const std::string err = slurp(cli.dir / "broken.err");
        expect(err.find("mcg:") != std::string::npos, "diagnostic is prefixed");
        expect(err.find("missing required key") != std::string::npos,
               "diagnostic names the missing key");
        expect(std::count(err.begin(), err.end(), '\n') <= 1, "diagnostic is one line");
    }

    // missing --config entirely
    {
        const int rc = cli.run("simulate", "noconfig");
        expect(rc != 0, "simulate without --config exits nonzero");
    }

    // sweep over a narrow window
    {
        const fs::path out_dir = cli.dir / "sweep";
        const int rc = cli.run("sweep --config " + cfg.string() +
                                   " --alpha-min 0.2 --alpha-max 0.22 --alpha-step 0.01"
                                   " --workers 2 --out " +
                                   out_dir.string(),
                               "sweep");
        expect(rc == 0, "sweep exits 0, got " + std::to_string(rc));
        expect(mentions(cli.dir / "sweep.out", "rows=3"), "sweep reports its row count");
        try {
            const auto bif = mcg::parse_bifurcation_csv((out_dir / "bifurcation.csv").string());
            expect(!bif.points.empty(), "bifurcation.csv has points");
            const auto ana = mcg::parse_analysis_csv((out_dir / "analysis.csv").string());
            expect(ana.size() == 3, "analysis.csv has one row per alpha");
            expect(ana.front().l1.has_value(), "analysis rows carry exponents");
        } catch (const std::exception& e) {
            expect(false, std::string("sweep artifacts parse: ") + e.what());
        }
        expect(fs::exists(out_dir / "bifurcation.svg"), "sweep writes bifurcation.svg");
    }

    // eigen table
    {
        const int rc = cli.run(
            "eigen --alpha-min 0.5 --alpha-max 2 --alpha-step 0.5 --out " + cli.dir.string(),
            "eigen");
        expect(rc == 0, "eigen exits 0, got " + std::to_string(rc));
        expect(mentions(cli.dir / "eigen.out", "alpha_star"), "eigen prints the threshold");
        expect(fs::exists(cli.dir / "eigen.csv"), "eigen writes eigen.csv");
        expect(mentions(cli.dir / "eigen.csv", "alpha,lambda1,re_lambda2,im_lambda2"),
               "eigen.csv header");
    }

    // thermistor fit quality
    {
        const int rc = cli.run("fit-thermistor --out " + cli.dir.string(), "fit");
        expect(rc == 0, "fit-thermistor exits 0, got " + std::to_string(rc));
        const std::string out = slurp(cli.dir / "fit.out");
        const auto pos = out.find("r_squared=");
        expect(pos != std::string::npos, "fit reports r_squared");
        if (pos != std::string::npos) {
            const double r2 = std::strtod(out.c_str() + pos + 10, nullptr);
            expect(r2 > 0.9 && r2 <= 1.0, "r_squared in (0.9, 1], got " + std::to_string(r2));
        }
        expect(fs::exists(cli.dir / "fit.csv"), "fit-thermistor writes fit.csv");
    }

    // bad invocations
    {
        expect(cli.run("frobnicate", "unknown") != 0, "unknown subcommand exits nonzero");
        expect(cli.run("", "nosub") != 0, "missing subcommand exits nonzero");
        expect(cli.run("sweep --alpha-min 2 --alpha-max 1", "badrange") != 0,
               "inverted sweep range exits nonzero");
        expect(mentions(cli.dir / "badrange.err", "mcg:"), "range error is diagnosed");
    }

    // the reserved global seed flag parses
    {
        const int rc = cli.run("--seed 7 eigen --alpha-min 1 --alpha-max 1.1 --alpha-step 0.1",
                               "seed");
        expect(rc == 0, "--seed is accepted, got " + std::to_string(rc));
    }

    if (failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << failures << " check(s) failed\n";
    return 1;
}
