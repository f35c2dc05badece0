#include "mcg/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace mcg {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

ModelParams::ModelParams(double alpha_, double eta_, double a_, double b_,
                         double mu_, double gamma_, double theta_, double epsilon_)
    : alpha(alpha_), eta(eta_), a(a_), b(b_), mu(mu_), gamma(gamma_),
      theta(theta_), epsilon(epsilon_) {
    require_finite(alpha, "alpha");
    require_finite(eta, "eta");
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(mu, "mu");
    require_finite(gamma, "gamma");
    require_finite(theta, "theta");
    require_finite(epsilon, "epsilon");
    require(alpha > 0.0, "alpha must be > 0");
    require(eta > 0.0, "eta must be > 0");
    require(mu > 0.0, "mu must be > 0");
    require(theta > 0.0, "theta must be > 0");
    require(epsilon > 0.0, "epsilon must be > 0");
    require(gamma * gamma < 4.0 * mu * theta,
            "gamma^2 must be < 4*mu*theta (memristance must stay positive)");
}

ModelParams ModelParams::with_alpha(double new_alpha) const {
    return ModelParams(new_alpha, eta, a, b, mu, gamma, theta, epsilon);
}

PhysicalParams::PhysicalParams(double capacitance_, double inductance_, double r0_,
                               double beta_, double t0_, double heat_capacitance_,
                               double dissipation_, double a_, double b_)
    : capacitance(capacitance_), inductance(inductance_), r0(r0_), beta(beta_),
      t0(t0_), heat_capacitance(heat_capacitance_), dissipation(dissipation_),
      a(a_), b(b_) {
    require_finite(capacitance, "C");
    require_finite(inductance, "L");
    require_finite(r0, "R0");
    require_finite(beta, "beta");
    require_finite(t0, "T0");
    require_finite(heat_capacitance, "c");
    require_finite(dissipation, "delta");
    require_finite(a, "a");
    require_finite(b, "b");
    require(capacitance > 0.0, "C must be > 0");
    require(inductance > 0.0, "L must be > 0");
    require(r0 > 0.0, "R0 must be > 0");
    require(beta > 0.0, "beta must be > 0");
    require(t0 > 0.0, "T0 must be > 0");
    require(heat_capacitance > 0.0, "c must be > 0");
    require(dissipation > 0.0, "delta must be > 0");
}

ModelParams physical_to_model(const PhysicalParams& ph) {
    const double scale = ph.r0 / ph.heat_capacitance;
    const double t0sq = ph.t0 * ph.t0;
    const double theta = scale;
    const double gamma = -scale * ph.beta / t0sq;
    const double mu = scale * ph.beta * (ph.beta + 2.0 * ph.t0) / (2.0 * t0sq * t0sq);
    const double epsilon = ph.dissipation / ph.heat_capacitance;
    try {
        return ModelParams(ph.capacitance, ph.inductance, ph.a, ph.b,
                           mu, gamma, theta, epsilon);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(
            std::string("physical_to_model: derived coefficients invalid (") + e.what() + ")");
    }
}

double thermistor_resistance(double temperature, const PhysicalParams& ph) {
    if (!(temperature > 0.0)) {
        throw std::domain_error("thermistor_resistance: temperature must be > 0");
    }
    return ph.r0 * std::exp(ph.beta * (1.0 / temperature - 1.0 / ph.t0));
}

double taylor_resistance(double temperature, const PhysicalParams& ph) {
    const double dt = temperature - ph.t0;
    const double t0sq = ph.t0 * ph.t0;
    const double lin = -ph.beta / t0sq;
    const double quad = ph.beta * (ph.beta + 2.0 * ph.t0) / (2.0 * t0sq * t0sq);
    return ph.r0 * (1.0 + lin * dt + quad * dt * dt);
}

double coefficient_of_determination(std::span<const double> observed,
                                    std::span<const double> predicted) {
    if (observed.size() != predicted.size()) {
        throw std::invalid_argument("coefficient_of_determination: length mismatch");
    }
    if (observed.empty()) {
        throw std::invalid_argument("coefficient_of_determination: empty input");
    }
    const double mean =
        std::accumulate(observed.begin(), observed.end(), 0.0) / double(observed.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double r = observed[i] - predicted[i];
        const double d = observed[i] - mean;
        ss_res += r * r;
        ss_tot += d * d;
    }
    if (ss_tot == 0.0) {
        throw std::invalid_argument("coefficient_of_determination: constant observations");
    }
    return 1.0 - ss_res / ss_tot;
}

ModelParams reference_params(double alpha) {
    return ModelParams(alpha, 12.2, -6.0, 3.0, 3.0, -2.0, 3.0, 0.6);
}

}  // namespace mcg
