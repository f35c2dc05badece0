#include "mcg/integrate.hpp"

#include <cstdio>
#include <string>

namespace mcg {

namespace {

std::string describe(const State& s, double when) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "trajectory diverged at t=%.6g (last finite state %.6g, %.6g, %.6g)",
                  when, s.x, s.y, s.z);
    return buf;
}

}  // namespace

DivergenceError::DivergenceError(const State& last, double when)
    : std::runtime_error(describe(last, when)), last_state(last), time(when) {}

void IntegrationSettings::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("IntegrationSettings: step must be > 0");
    }
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw std::invalid_argument("IntegrationSettings: t_end must be > 0");
    }
    if (!(t_skip >= 0.0) || !(t_skip < t_end)) {
        throw std::invalid_argument("IntegrationSettings: t_skip must satisfy 0 <= t_skip < t_end");
    }
    if (stride < 1) {
        throw std::invalid_argument("IntegrationSettings: stride must be >= 1");
    }
    if (t_end / step > 1e9) {
        throw std::invalid_argument("IntegrationSettings: t_end/step exceeds 1e9 steps");
    }
    if (method == Method::AdaptiveRk45 && (!(abs_tol > 0.0) || !(rel_tol > 0.0))) {
        throw std::invalid_argument("IntegrationSettings: adaptive tolerances must be > 0");
    }
}

std::vector<Peak> local_maxima(std::span<const double> values,
                               std::span<const double> times) {
    if (values.size() != times.size()) {
        throw std::invalid_argument("local_maxima: length mismatch");
    }
    if (values.size() < 3) {
        throw std::invalid_argument("local_maxima: need at least 3 samples");
    }

    std::vector<Peak> peaks;
    const std::size_t n = values.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(values[i] > values[i - 1])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && values[j + 1] == values[i]) ++j;
        if (j + 1 >= n) break;  // plateau runs into the boundary
        if (values[j + 1] < values[i]) {
            if (j == i) {
                // Strict peak: vertex of the parabola through the bracket.
                const double t0 = times[i - 1], t1 = times[i], t2 = times[i + 1];
                const double v0 = values[i - 1], v1 = values[i], v2 = values[i + 1];
                const double d1 = (v1 - v0) / (t1 - t0);
                const double d2 = (v2 - v1) / (t2 - t1);
                const double curv = (d2 - d1) / (t2 - t0);
                if (curv < 0.0) {
                    const double tv = 0.5 * (t0 + t1) - d1 / (2.0 * curv);
                    const double vv = v0 + d1 * (tv - t0) + curv * (tv - t0) * (tv - t1);
                    peaks.push_back({std::clamp(tv, t0, t2), std::max(vv, v1)});
                } else {
                    peaks.push_back({t1, v1});
                }
            } else {
                // Plateau: one maximum, first index, no refinement.
                peaks.push_back({times[i], values[i]});
            }
        }
        i = j + 1;
    }
    return peaks;
}

std::vector<Peak> z_maxima(const Trajectory& traj) {
    std::vector<double> z(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k) z[k] = traj.states[k].z;
    return local_maxima(z, traj.t);
}

}  // namespace mcg
