#pragma once

#include <span>
#include <string>

#include "mcg/integrate.hpp"
#include "mcg/sweep.hpp"

// Hand-rolled standalone SVG scatter plots: verification aids for the
// bifurcation diagrams and phase portraits, not pixel-exact figures. No
// graphics dependency; output is well-formed XML with linear tick-labeled
// axes. A degenerate axis range (min == max) is padded by 5%, never an error.

namespace mcg {

struct AxesSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
};

/// Generic scatter of (x, y) pairs. Throws std::invalid_argument on empty or
/// mismatched inputs, std::runtime_error naming an unwritable path.
void write_svg_scatter(std::span<const double> xs, std::span<const double> ys,
                       const AxesSpec& axes, const std::string& path);

/// Bifurcation form: one marker per (alpha, z-maximum) pair; diverged rows
/// contribute no markers.
void write_svg_scatter(std::span<const SweepRow> rows, const AxesSpec& axes,
                       const std::string& path);

/// Phase-portrait / time-series form: scatter of two trajectory components.
enum class Component { T, X, Y, Z };

void write_svg_scatter(const Trajectory& traj, Component horizontal, Component vertical,
                       const AxesSpec& axes, const std::string& path);

}  // namespace mcg
