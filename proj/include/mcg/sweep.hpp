#pragma once

#include <optional>
#include <vector>

#include "mcg/analyze.hpp"
#include "mcg/integrate.hpp"
#include "mcg/model.hpp"

// Parallel parameter sweeps over alpha, the bifurcation-diagram workhorse.
// Every alpha restarts from the same default initial condition so output is
// reproducible and order-independent; a continuation scheme could land on a
// different coexisting attractor.

namespace mcg {

enum Analysis : unsigned {
    kAnalysisMaxima = 1u << 0,
    kAnalysisLce = 1u << 1,
    kAnalysisClassify = 1u << 2,  // implies LCE
};

struct SweepSpec {
    double alpha_min = 0.001;
    double alpha_max = 1.2;
    double alpha_step = 0.01;
    ModelParams base = reference_params(1.0);  // alpha field ignored per grid point
    IntegrationSettings integration;
    LyapunovSettings lyapunov;
    unsigned analyses = kAnalysisMaxima | kAnalysisLce | kAnalysisClassify;
    unsigned workers = 1;
    double zero_tol = 0.02;
    double cluster_tol_rel = 0.02;
    double sym_tol = 0.05;

    /// Throws std::invalid_argument naming the offending field. Requires
    /// alpha_max > alpha_min, alpha_step > 0, alpha_min > 0, workers >= 1,
    /// and at least one analysis selected.
    void validate() const;

    /// The exact grid: alpha_min + i*alpha_step while <= alpha_max (+1e-9
    /// slack for decimal steps). Never empty for a valid spec.
    std::vector<double> alphas() const;
};

struct SweepRow {
    double alpha = 0.0;
    std::vector<double> z_maxima;  // empty when diverged
    std::optional<LyapunovSpectrum> spectrum;
    std::optional<double> ky_dim;  // zero-snapped, present with spectrum
    std::optional<AttractorClass> attractor;
    bool diverged = false;
};

/// Runs the sweep over a bounded worker pool. Rows come back in ascending
/// alpha order regardless of scheduling and are byte-stable across worker
/// counts. Divergence at one alpha marks that row and never aborts the rest.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace mcg
