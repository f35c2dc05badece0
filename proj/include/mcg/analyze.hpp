#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcg/integrate.hpp"
#include "mcg/model.hpp"

// Analysis toolchain for the MCG flow: origin eigenvalues and fixed-point
// classification, Lyapunov spectra via the variational equations, the
// Kaplan-Yorke dimension, attractor taxonomy, period detection on z-maxima,
// and geometric double-spiral recognition.

namespace mcg {

enum class FixedPointKind { SaddleFocus, SaddleNode };

std::string to_string(FixedPointKind k);

/// Eigen-structure of the Jacobian at the origin, the system's unique fixed
/// point. The characteristic polynomial factors into (lambda + epsilon)
/// times a quadratic; lambda1 = -epsilon always, lambda2/3 are the quadratic
/// roots (a conjugate pair when the discriminant is negative).
struct EigenReport {
    double lambda1 = 0.0;
    std::complex<double> lambda2;
    std::complex<double> lambda3;
    double discriminant = 0.0;              // (a+theta)^2 - 4*eta/alpha
    std::optional<double> alpha_star;       // 4*eta/(a+theta)^2; nullopt when a+theta == 0
    FixedPointKind classification = FixedPointKind::SaddleNode;
};

/// Closed-form eigenvalues at the origin.
EigenReport origin_eigenvalues(const ModelParams& p);

/// SaddleFocus iff the quadratic discriminant is negative (complex pair);
/// the zero-discriminant boundary counts as SaddleNode.
FixedPointKind classify_fixed_point(const EigenReport& rep);

struct LyapunovSettings {
    double step = 0.005;
    double transient = 500.0;       // discarded before averaging begins
    double averaging = 5000.0;      // total averaging time
    double renorm_interval = 1.0;   // Gram-Schmidt renormalization cadence

    void validate() const;
};

struct LyapunovSpectrum {
    std::array<double, 3> exponents{};       // sorted descending, per unit time
    double averaging_time = 0.0;
    double renorm_interval = 0.0;
    std::array<double, 3> tail_variation{};  // drift of each exponent over the last 10%
};

/// Benettin tangent-space method: co-integrates the flow with three tangent
/// vectors propagated by the Jacobian, renormalizing at the configured
/// interval; exponents are time-averaged log stretch factors. Propagates
/// DivergenceError if the trajectory blows up. s0 must not be the origin.
LyapunovSpectrum lyapunov_spectrum(const ModelParams& p, const State& s0,
                                   const LyapunovSettings& settings = {});

/// Kaplan-Yorke dimension of a descending spectrum: D = j + (sum of the
/// first j exponents)/|exponent j+1| with j the largest index whose partial
/// sum is nonnegative; 0 if the largest exponent is negative, 3 if no
/// partial sum is negative.
double kaplan_yorke(const LyapunovSpectrum& ls);

/// Same, after snapping exponents within zero_tol of 0 to exactly 0, so a
/// measured (0,-,-) spectrum yields exactly 1 and (0,0,-) exactly 2.
double kaplan_yorke(const LyapunovSpectrum& ls, double zero_tol);

enum class AttractorKind { Torus2, LimitCycle1, PeriodicN, Chaos, Unclassified };

std::string to_string(AttractorKind k);

struct AttractorClass {
    AttractorKind kind = AttractorKind::Unclassified;
    int period = 0;             // 1 for LimitCycle1, n >= 2 for PeriodicN, else 0
    bool double_spiral = false; // meaningful only for Chaos
};

/// Sign-pattern taxonomy with tolerance zero_tol: (+,0,-) -> Chaos,
/// (0,0,-) -> Torus2, (0,-,-) -> LimitCycle1 (the periodic family; the
/// period is refined by the overload below). Any other pattern ->
/// Unclassified, reported rather than raised.
AttractorClass classify_attractor(const LyapunovSpectrum& ls, double zero_tol);

/// Periodic-family refinement: when the pattern is (0,-,-) and at least 8
/// z-maxima are supplied, detect_period resolves LimitCycle1 vs PeriodicN(n).
/// Ambiguous or aperiodic clusterings fall back to the unrefined class.
AttractorClass classify_attractor(const LyapunovSpectrum& ls, double zero_tol,
                                  std::span<const double> z_maxima,
                                  double cluster_tol_rel);

struct PeriodDetection {
    int period = 0;                 // cluster count at the nominal tolerance
    bool ambiguous = false;         // count unstable under +/-50% tolerance change
    bool sequence_periodic = false; // cluster visit sequence repeats with the count
};

/// Clusters maxima by 1D single linkage with threshold cluster_tol_rel times
/// the series range (floored at 1e-9); the cluster count is the candidate
/// period, cross-checked at 0.5x and 1.5x tolerance and against the cluster
/// visit sequence. Requires at least 8 maxima.
PeriodDetection detect_period(std::span<const double> z_maxima, double cluster_tol_rel);

/// z-maxima of a trajectory split by spiral lobe, for double-scroll style
/// attractors symmetric under (x,y,z) -> (-x,-y,z). Each maximum belongs to
/// the winding that produced it (the segment since the previous maximum) and
/// the winding's lobe is the sign of x at its farthest swing from the x=0
/// plane. [0] holds the x<0 lobe, [1] the x>=0 lobe, both in time order.
/// Feeding one lobe to detect_period counts the branches per spiral.
std::array<std::vector<double>, 2> maxima_by_lobe(const Trajectory& traj);

/// True iff the point cloud is approximately invariant under
/// (x,y,z) -> (-x,-y,z): at least (1-sym_tol) of samples have a mirrored
/// neighbor within sym_tol times the cloud's bounding-box diagonal, and
/// both x-half-spaces beyond 1% of the diagonal hold at least 25% of the
/// samples each.
bool detect_double_spiral(std::span<const State> cloud, double sym_tol);

/// Trajectory form; requires at least 10^4 post-transient samples.
bool detect_double_spiral(const Trajectory& traj, double sym_tol);

}  // namespace mcg
