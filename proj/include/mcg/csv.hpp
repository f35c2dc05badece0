#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcg/integrate.hpp"
#include "mcg/sweep.hpp"

// CSV emission and parse-back. All floating-point fields are written with 17
// significant digits so a round trip reproduces the doubles bit-exactly.
// Schemas:
//   trajectory:  t,x,y,z
//   bifurcation: alpha,zmax           (diverged row: <alpha>,diverged=1)
//   analysis:    alpha,l1,l2,l3,ky_dim,class,period,double_spiral
//                (diverged row: class=Diverged, numeric fields empty)

namespace mcg {

/// Shortest 17-significant-digit decimal form of v.
std::string g17(double v);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// One line per (alpha, z-maximum) pair; rows flagged diverged emit a single
/// marker line instead. Throws std::invalid_argument on empty rows,
/// std::runtime_error naming the path when it cannot be opened.
void write_bifurcation_csv(std::span<const SweepRow> rows, const std::string& path);

/// One line per alpha; spectrum and class fields are left empty when the row
/// carries none (maxima-only sweeps, diverged rows).
void write_analysis_csv(std::span<const SweepRow> rows, const std::string& path);

struct BifurcationFile {
    std::vector<std::pair<double, double>> points;  // (alpha, zmax)
    std::vector<double> diverged_alphas;
};

struct AnalysisRecord {
    double alpha = 0.0;
    std::optional<double> l1, l2, l3, ky_dim;
    std::string cls;  // empty when the row had no classification
    std::optional<int> period;
    std::optional<bool> double_spiral;
};

Trajectory parse_trajectory_csv(const std::string& path);
BifurcationFile parse_bifurcation_csv(const std::string& path);
std::vector<AnalysisRecord> parse_analysis_csv(const std::string& path);

}  // namespace mcg
