#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "mcg/model.hpp"

// Explicit integration of 3D autonomous flows: fixed-step classical RK4 and
// an embedded Dormand-Prince 5(4) pair, trajectory capture with transient
// skipping and stride sampling, and local-maxima extraction for bifurcation
// diagrams.

namespace mcg {

/// Any |component| beyond this (or a non-finite value) counts as blow-up.
/// Far above the attractor scale, which is O(1).
inline constexpr double kDivergenceLimit = 1e12;

/// Stock starting point for all bundled analyses. Off the origin, which is
/// the fixed point.
inline constexpr State kDefaultInitialState{0.1, 0.1, 0.1};

enum class Method { FixedRk4, AdaptiveRk45 };

struct IntegrationSettings {
    double step = 0.005;   // fixed step; initial step for the adaptive method
    double t_end = 2000.0;
    double t_skip = 500.0; // samples before this time are discarded
    std::size_t stride = 4; // keep every stride-th sample
    Method method = Method::FixedRk4;
    double abs_tol = 1e-9; // adaptive only
    double rel_tol = 1e-9; // adaptive only

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Sampled solution. Fixed-step trajectories are uniformly spaced at
/// step*stride; adaptive ones are non-uniform and always include the final
/// state.
struct Trajectory {
    std::vector<double> t;
    std::vector<State> states;
    IntegrationSettings settings;

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }
};

/// Thrown when a trajectory blows up. Carries the last state that was still
/// finite and within kDivergenceLimit, and the time at which the violation
/// was detected (absolute for integrate, elapsed for a bare rk4_step).
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const State& last, double when);

    State last_state;
    double time;
};

template <typename F>
concept VectorFieldFn = requires(F f, const State& s) {
    { f(s) } -> std::convertible_to<State>;
};

inline bool within_divergence_limit(const State& s) {
    return all_finite(s) && std::fabs(s.x) <= kDivergenceLimit &&
           std::fabs(s.y) <= kDivergenceLimit && std::fabs(s.z) <= kDivergenceLimit;
}

/// One classical 4-stage Runge-Kutta update of an autonomous field.
template <VectorFieldFn F>
State rk4_step(F&& field, const State& s, double h) {
    // Stage points are guarded so a mid-step overflow surfaces as divergence
    // instead of reaching the field as a non-finite state.
    auto stage = [&](const State& p) {
        if (!all_finite(p)) throw DivergenceError(s, h);
        return field(p);
    };
    const State k1 = field(s);
    const State k2 = stage(s + (0.5 * h) * k1);
    const State k3 = stage(s + (0.5 * h) * k2);
    const State k4 = stage(s + h * k3);
    const State next = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(next)) throw DivergenceError(s, h);
    return next;
}

namespace detail {

template <VectorFieldFn F>
Trajectory integrate_fixed(F&& field, State s, const IntegrationSettings& cfg) {
    const double h = cfg.step;
    const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / h));
    const auto i_skip = static_cast<std::size_t>(std::ceil(cfg.t_skip / h - 1e-9));

    Trajectory out;
    out.settings = cfg;
    if (i_skip <= n_steps) {
        const std::size_t expected = (n_steps - i_skip) / cfg.stride + 1;
        out.t.reserve(expected);
        out.states.reserve(expected);
    }
    auto record = [&](std::size_t i, const State& st) {
        if (i >= i_skip && (i - i_skip) % cfg.stride == 0) {
            out.t.push_back(static_cast<double>(i) * h);
            out.states.push_back(st);
        }
    };

    record(0, s);
    for (std::size_t i = 0; i < n_steps; ++i) {
        State next;
        try {
            next = rk4_step(field, s, h);
        } catch (const DivergenceError&) {
            throw DivergenceError(s, static_cast<double>(i + 1) * h);
        }
        if (!within_divergence_limit(next)) {
            throw DivergenceError(s, static_cast<double>(i + 1) * h);
        }
        s = next;
        record(i + 1, s);
    }
    return out;
}

template <VectorFieldFn F>
Trajectory integrate_adaptive(F&& field, State s, const IntegrationSettings& cfg) {
    // Dormand-Prince 5(4) with FSAL; the 5th-order solution propagates.
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b* (difference against the embedded 4th-order weights)
    constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                     e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                     e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

    Trajectory out;
    out.settings = cfg;
    double t = 0.0;
    double h = cfg.step;
    std::size_t kept = 0;
    auto record = [&](double tt, const State& st) {
        if (tt >= cfg.t_skip - 1e-12) {
            if (kept % cfg.stride == 0) {
                out.t.push_back(tt);
                out.states.push_back(st);
            }
            ++kept;
        }
    };
    record(0.0, s);

    State k1 = field(s);
    const double tiny = 1e-12 * std::max(1.0, cfg.t_end);
    while (cfg.t_end - t > tiny) {
        h = std::min(h, cfg.t_end - t);
        // A non-finite stage point marks the step as overflowed; it is then
        // rejected like any over-tolerance step rather than fed to the field.
        bool overflowed = false;
        auto stage = [&](const State& p) {
            if (overflowed || !all_finite(p)) {
                overflowed = true;
                return State{};
            }
            return field(p);
        };
        const State k2 = stage(s + (h * a21) * k1);
        const State k3 = stage(s + h * (a31 * k1 + a32 * k2));
        const State k4 = stage(s + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const State k5 = stage(s + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const State k6 =
            stage(s + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const State snew = s + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const State k7 = stage(snew);
        if (overflowed) {
            h *= 0.2;
            if (h < 1e-13 * std::max(1.0, std::fabs(t))) throw DivergenceError(s, t);
            continue;
        }
        const State ev = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        auto scaled = [&](double e, double y0, double y1) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y0), std::fabs(y1));
            return e / sc;
        };
        const double ex = scaled(ev.x, s.x, snew.x);
        const double ey = scaled(ev.y, s.y, snew.y);
        const double ez = scaled(ev.z, s.z, snew.z);
        const double err = std::sqrt((ex * ex + ey * ey + ez * ez) / 3.0);

        if (err <= 1.0 && all_finite(snew)) {
            if (!within_divergence_limit(snew)) throw DivergenceError(s, t + h);
            t += h;
            s = snew;
            k1 = k7;
            record(t, s);
            const double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            const double fac =
                std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= std::min(fac, 1.0);
            if (h < 1e-13 * std::max(1.0, std::fabs(t))) throw DivergenceError(s, t);
        }
    }
    if (out.t.empty() || out.t.back() != t) {
        out.t.push_back(t);
        out.states.push_back(s);
    }
    return out;
}

}  // namespace detail

/// Trajectory of `field` from s0 over [0, t_end] per cfg. Samples before
/// t_skip are discarded; every stride-th remaining sample is kept. Throws
/// DivergenceError when any component exceeds kDivergenceLimit or turns
/// non-finite.
template <VectorFieldFn F>
Trajectory integrate(F&& field, const State& s0, const IntegrationSettings& cfg) {
    cfg.validate();
    if (!all_finite(s0)) throw std::invalid_argument("integrate: non-finite initial state");
    if (cfg.method == Method::FixedRk4) {
        return detail::integrate_fixed(field, s0, cfg);
    }
    return detail::integrate_adaptive(field, s0, cfg);
}

/// Convenience overload for the MCG flow itself.
inline Trajectory integrate(const ModelParams& p, const State& s0,
                            const IntegrationSettings& cfg) {
    return integrate([&p](const State& s) { return vector_field(s, p); }, s0, cfg);
}

/// A local maximum of a sampled signal, quadratically refined.
struct Peak {
    double time = 0.0;
    double value = 0.0;
};

/// Strict interior local maxima of `values`, refined by the parabola through
/// the three bracketing samples. Runs of equal values (plateaus) yield at
/// most one maximum, reported unrefined at the first plateau index. Requires
/// equal lengths and at least 3 samples.
std::vector<Peak> local_maxima(std::span<const double> values,
                               std::span<const double> times);

/// Maxima of the z component of a trajectory.
std::vector<Peak> z_maxima(const Trajectory& traj);

/// Heights alone, for the clustering consumers.
inline std::vector<double> peak_values(std::span<const Peak> peaks) {
    std::vector<double> out(peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) out[i] = peaks[i].value;
    return out;
}

}  // namespace mcg
