#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "mcg/config.hpp"
#include "mcg/model.hpp"

// Single-point pipelines behind the CLI subcommands: one full
// integrate/analyze/emit run, the origin-eigenvalue table, and the
// thermistor-vs-quadratic fit comparison.

namespace mcg {

/// Runs integrate -> analyze -> emit for one parameter point. Prints the
/// parameter echo (mapped values when the config was physical), the eigen
/// report, the Lyapunov spectrum, the Kaplan-Yorke dimension, and the
/// attractor class as labeled key=value lines; writes trajectory.csv,
/// phase_xy.svg and series_tz.svg under out_dir. Throws on divergence or
/// unwritable output.
void run_single(const RunConfig& cfg, const std::string& out_dir, std::ostream& out);

/// Origin eigenvalues tabulated over an alpha range (inclusive grid like the
/// sweep). Writes a readable table to `out` and, when csv_path is set, a CSV
/// with 17-significant-digit columns.
void run_eigen_table(const ModelParams& base, double alpha_min, double alpha_max,
                     double alpha_step, std::ostream& out,
                     const std::optional<std::string>& csv_path = std::nullopt);

/// Coefficient of determination of the quadratic surrogate against the
/// exponential thermistor law over a uniform temperature grid.
struct ThermistorFit {
    double r0 = 0.0;
    double beta = 0.0;
    double t0 = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    int samples = 0;
    double r_squared = 0.0;
};

ThermistorFit fit_thermistor(double r0, double beta, double t0, double t_min, double t_max,
                             int samples);

/// CLI wrapper: prints the fit as key=value lines and optionally writes the
/// (T, exponential, quadratic) grid as CSV.
void run_thermistor_fit(const ThermistorFit& fit, std::ostream& out,
                        const std::optional<std::string>& csv_path = std::nullopt);

}  // namespace mcg
