#pragma once

#include <optional>
#include <string>

#include "mcg/analyze.hpp"
#include "mcg/integrate.hpp"
#include "mcg/model.hpp"

// Run configuration loaded from flat key=value text ('#' comments) or, for
// programmatic callers, a flat JSON object with the same keys. The physics
// block is either direct model coefficients or physical circuit values
// selected by `parameters = model|physical`; everything else is optional and
// falls back to library defaults.
//
// Keys:
//   parameters             model (default) | physical
//   model:                 alpha, eta, a, b, mu, gamma, theta, epsilon
//   physical:              C, L, R0, beta, T0, c, delta, a, b
//   initial state:         x0, y0, z0
//   integration:           step, t_end, t_skip, stride, method (rk4|rk45),
//                          rel_tol, abs_tol
//   lyapunov:              lce_step, lce_transient, lce_averaging, lce_renorm
//   analysis:              zero_tol, cluster_tol_rel, sym_tol

namespace mcg {

struct RunConfig {
    ModelParams params;
    std::optional<PhysicalParams> physical;  // set when parameters=physical
    State initial_state = kDefaultInitialState;
    IntegrationSettings integration;
    LyapunovSettings lyapunov;
    double zero_tol = 0.02;
    double cluster_tol_rel = 0.02;
    double sym_tol = 0.05;
};

/// Parses config text. source_name appears in diagnostics (a path or a tag
/// like "<inline>"). Leading whitespace then '{' selects the JSON form.
/// Throws std::invalid_argument naming the offending key and line on unknown
/// keys, duplicates, malformed lines, non-numeric values, or missing
/// required physics keys.
RunConfig parse_run_config(const std::string& text, const std::string& source_name);

/// Reads and parses a config file; unreadable path throws std::runtime_error.
RunConfig load_run_config(const std::string& path);

}  // namespace mcg
