#pragma once

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

// Model definition for the memristor circuit this package studies: a series
// loop of a linear capacitor, a linear inductor, a cubic nonlinear resistor
// and an NTC thermistor acting as a current-controlled memristor.
// The thermistor resistance is replaced by its second-order polynomial
// surrogate R(z) = mu*z^2 + gamma*z + theta in the temperature offset
// z = T - T0, which turns the circuit into the 3D autonomous flow
//
//   x' = y / alpha
//   y' = -(x + f(y) + R(z)*y) / eta,   f(y) = a*y + b*y^3
//   z' = R(z)*y^2 - epsilon*z
//
// with x the capacitor voltage, y the current and z the temperature offset.

namespace mcg {

/// A point of the (x, y, z) phase space.
struct State {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline State operator+(const State& a, const State& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline State operator-(const State& a, const State& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline State operator*(double c, const State& s) { return {c * s.x, c * s.y, c * s.z}; }

inline bool all_finite(const State& s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z);
}

/// The flow commutes with this reflection: if (x(t), y(t), z(t)) solves the
/// system, so does (-x(t), -y(t), z(t)).
inline State mirror(const State& s) { return {-s.x, -s.y, s.z}; }

/// Image of a phase-space velocity under the same reflection.
inline State mirror_velocity(const State& v) { return {-v.x, -v.y, v.z}; }

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Abstract coefficients of the flow. Validated eagerly: every instance
/// satisfies mu > 0, theta > 0, epsilon > 0, alpha > 0, eta > 0 and
/// gamma^2 < 4*mu*theta, so the memristance R(z) is strictly positive for
/// every z and downstream code never re-checks.
class ModelParams {
public:
    ModelParams(double alpha, double eta, double a, double b,
                double mu, double gamma, double theta, double epsilon);

    double alpha;
    double eta;
    double a;
    double b;
    double mu;
    double gamma;
    double theta;
    double epsilon;

    /// Copy with a different alpha (the usual bifurcation parameter).
    ModelParams with_alpha(double new_alpha) const;
};

/// Physical circuit and thermistor quantities. All of C, L, R0, beta, T0,
/// c, delta must be strictly positive; a and b (the nonlinear resistor
/// coefficients) are unconstrained.
class PhysicalParams {
public:
    PhysicalParams(double capacitance, double inductance, double r0, double beta,
                   double t0, double heat_capacitance, double dissipation,
                   double a, double b);

    double capacitance;       // C, farads
    double inductance;        // L, henries
    double r0;                // cold resistance at T0, ohms
    double beta;              // material constant, kelvin
    double t0;                // room temperature, kelvin
    double heat_capacitance;  // c, J/K
    double dissipation;       // delta, W/K
    double a;                 // resistor coefficient, ohms
    double b;                 // resistor coefficient, ohms per ampere^2
};

/// Memristance surrogate R(z) = mu*z^2 + gamma*z + theta. Strictly positive
/// for every z by the ModelParams invariant.
inline double memristance(double z, const ModelParams& p) {
    return (p.mu * z + p.gamma) * z + p.theta;
}

/// Voltage across the cubic resistor as a function of current: a*y + b*y^3.
/// Odd in y.
inline double nonlinear_resistor(double y, const ModelParams& p) {
    return p.a * y + p.b * y * y * y;
}

/// Right-hand side of the flow at state s. Throws std::domain_error on a
/// non-finite state.
inline State vector_field(const State& s, const ModelParams& p) {
    if (!all_finite(s)) throw std::domain_error("vector_field: non-finite state");
    const double r = memristance(s.z, p);
    return {s.y / p.alpha,
            -(s.x + nonlinear_resistor(s.y, p) + r * s.y) / p.eta,
            r * s.y * s.y - p.epsilon * s.z};
}

/// Jacobian of the vector field at state s (row-major).
inline Mat3 jacobian(const State& s, const ModelParams& p) {
    const double r = memristance(s.z, p);
    const double dr = 2.0 * p.mu * s.z + p.gamma;  // R'(z)
    return Mat3{{{0.0, 1.0 / p.alpha, 0.0},
                 {-1.0 / p.eta,
                  -(p.a + 3.0 * p.b * s.y * s.y + r) / p.eta,
                  -s.y * dr / p.eta},
                 {0.0, 2.0 * r * s.y, dr * s.y * s.y - p.epsilon}}};
}

inline double trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

/// Maps circuit quantities onto the abstract coefficients:
///   alpha = C, eta = L, theta = R0/c, gamma = -(R0/c)*beta/T0^2,
///   mu = (R0/c)*beta*(beta + 2*T0)/(2*T0^4), epsilon = delta/c,
/// with a and b passed through. Throws if the resulting quadratic
/// surrogate is not positive definite.
ModelParams physical_to_model(const PhysicalParams& ph);

/// NTC thermistor characteristic R(T) = R0 * exp(beta*(1/T - 1/T0)).
/// Strictly decreasing in T for beta > 0. Requires T > 0.
double thermistor_resistance(double temperature, const PhysicalParams& ph);

/// Second-order polynomial expansion of the thermistor characteristic
/// about T0:
///   R0 * [1 - (beta/T0^2)*(T-T0) + beta*(beta+2*T0)/(2*T0^4)*(T-T0)^2].
/// Matches thermistor_resistance in value and first two derivatives at T0.
double taylor_resistance(double temperature, const PhysicalParams& ph);

/// R^2 = 1 - SS_res/SS_tot with SS_tot about the mean of `observed`.
/// Requires equal nonzero lengths and non-constant `observed`.
double coefficient_of_determination(std::span<const double> observed,
                                    std::span<const double> predicted);

/// Coefficient set used throughout the bundled analyses and as the CLI
/// default: a=-6, b=3, eta=12.2, mu=3, gamma=-2, theta=3, epsilon=0.6,
/// with alpha free as the bifurcation parameter.
ModelParams reference_params(double alpha);

}  // namespace mcg
