#include "mcg/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace mcg {

namespace {

double dot(const State& a, const State& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double norm(const State& a) { return std::sqrt(dot(a, a)); }

State matvec(const Mat3& m, const State& v) {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

// One RK4 step of the flow coupled with three tangent vectors propagated by
// the variational equations (Jacobian evaluated at the stage states).
void variational_rk4_step(State& s, State& v1, State& v2, State& v3,
                          const ModelParams& p, double h) {
    const State k1 = vector_field(s, p);
    const Mat3 j1 = jacobian(s, p);
    const State m1a = matvec(j1, v1);
    const State m1b = matvec(j1, v2);
    const State m1c = matvec(j1, v3);

    const State sb = s + (0.5 * h) * k1;
    const State k2 = vector_field(sb, p);
    const Mat3 j2 = jacobian(sb, p);
    const State m2a = matvec(j2, v1 + (0.5 * h) * m1a);
    const State m2b = matvec(j2, v2 + (0.5 * h) * m1b);
    const State m2c = matvec(j2, v3 + (0.5 * h) * m1c);

    const State sc = s + (0.5 * h) * k2;
    const State k3 = vector_field(sc, p);
    const Mat3 j3 = jacobian(sc, p);
    const State m3a = matvec(j3, v1 + (0.5 * h) * m2a);
    const State m3b = matvec(j3, v2 + (0.5 * h) * m2b);
    const State m3c = matvec(j3, v3 + (0.5 * h) * m2c);

    const State sd = s + h * k3;
    const State k4 = vector_field(sd, p);
    const Mat3 j4 = jacobian(sd, p);
    const State m4a = matvec(j4, v1 + h * m3a);
    const State m4b = matvec(j4, v2 + h * m3b);
    const State m4c = matvec(j4, v3 + h * m3c);

    const double w = h / 6.0;
    s = s + w * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    v1 = v1 + w * (m1a + 2.0 * m2a + 2.0 * m3a + m4a);
    v2 = v2 + w * (m1b + 2.0 * m2b + 2.0 * m3b + m4b);
    v3 = v3 + w * (m1c + 2.0 * m2c + 2.0 * m3c + m4c);
}

double kaplan_yorke_of(const std::array<double, 3>& lam) {
    if (lam[0] < 0.0) return 0.0;
    const double s1 = lam[0];
    const double s2 = s1 + lam[1];
    const double s3 = s2 + lam[2];
    if (s3 >= 0.0) return 3.0;
    if (s2 >= 0.0) return 2.0 + s2 / std::fabs(lam[2]);
    return 1.0 + s1 / std::fabs(lam[1]);
}

}  // namespace

std::string to_string(FixedPointKind k) {
    return k == FixedPointKind::SaddleFocus ? "SaddleFocus" : "SaddleNode";
}

std::string to_string(AttractorKind k) {
    switch (k) {
        case AttractorKind::Torus2: return "Torus2";
        case AttractorKind::LimitCycle1: return "LimitCycle1";
        case AttractorKind::PeriodicN: return "PeriodicN";
        case AttractorKind::Chaos: return "Chaos";
        case AttractorKind::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

EigenReport origin_eigenvalues(const ModelParams& p) {
    EigenReport rep;
    rep.lambda1 = -p.epsilon;
    const double s = p.a + p.theta;
    rep.discriminant = s * s - 4.0 * p.eta / p.alpha;
    if (s != 0.0) rep.alpha_star = 4.0 * p.eta / (s * s);
    const double denom = 2.0 * p.eta;
    if (rep.discriminant < 0.0) {
        const double re = -s / denom;
        const double im = std::sqrt(-rep.discriminant) / denom;
        rep.lambda2 = {re, im};
        rep.lambda3 = {re, -im};
    } else {
        const double root = std::sqrt(rep.discriminant);
        rep.lambda2 = {(-s + root) / denom, 0.0};
        rep.lambda3 = {(-s - root) / denom, 0.0};
    }
    rep.classification = classify_fixed_point(rep);
    return rep;
}

FixedPointKind classify_fixed_point(const EigenReport& rep) {
    return rep.discriminant < 0.0 ? FixedPointKind::SaddleFocus : FixedPointKind::SaddleNode;
}

void LyapunovSettings::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw std::invalid_argument("LyapunovSettings: step must be > 0");
    }
    if (!(transient >= 0.0)) {
        throw std::invalid_argument("LyapunovSettings: transient must be >= 0");
    }
    if (!(averaging > 0.0)) {
        throw std::invalid_argument("LyapunovSettings: averaging must be > 0");
    }
    if (!(renorm_interval >= step)) {
        throw std::invalid_argument("LyapunovSettings: renorm_interval must be >= step");
    }
    if ((transient + averaging) / step > 1e9) {
        throw std::invalid_argument("LyapunovSettings: more than 1e9 steps requested");
    }
}

LyapunovSpectrum lyapunov_spectrum(const ModelParams& p, const State& s0,
                                   const LyapunovSettings& settings) {
    settings.validate();
    if (s0.x == 0.0 && s0.y == 0.0 && s0.z == 0.0) {
        throw std::invalid_argument("lyapunov_spectrum: initial state is the fixed point");
    }

    const double h = settings.step;
    State s = s0;

    const auto n_trans = static_cast<std::size_t>(std::llround(settings.transient / h));
    for (std::size_t i = 0; i < n_trans; ++i) {
        State next;
        try {
            next = rk4_step([&p](const State& q) { return vector_field(q, p); }, s, h);
        } catch (const DivergenceError&) {
            throw DivergenceError(s, static_cast<double>(i + 1) * h);
        }
        if (!within_divergence_limit(next)) {
            throw DivergenceError(s, static_cast<double>(i + 1) * h);
        }
        s = next;
    }

    const auto steps_per_renorm =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(settings.renorm_interval / h)));
    const double t_renorm = static_cast<double>(steps_per_renorm) * h;
    const auto n_renorm =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(settings.averaging / t_renorm)));
    const double total_time = static_cast<double>(n_renorm) * t_renorm;

    State v1{1.0, 0.0, 0.0};
    State v2{0.0, 1.0, 0.0};
    State v3{0.0, 0.0, 1.0};
    std::array<double, 3> logsum{};
    std::array<double, 3> tail_lo;
    std::array<double, 3> tail_hi;
    tail_lo.fill(std::numeric_limits<double>::infinity());
    tail_hi.fill(-std::numeric_limits<double>::infinity());

    for (std::size_t r = 0; r < n_renorm; ++r) {
        for (std::size_t i = 0; i < steps_per_renorm; ++i) {
            const State before = s;
            variational_rk4_step(s, v1, v2, v3, p, h);
            if (!within_divergence_limit(s)) {
                const double when = settings.transient +
                                    static_cast<double>(r) * t_renorm +
                                    static_cast<double>(i + 1) * h;
                throw DivergenceError(before, when);
            }
        }
        const double r1 = norm(v1);
        v1 = (1.0 / r1) * v1;
        v2 = v2 - dot(v2, v1) * v1;
        const double r2 = norm(v2);
        v2 = (1.0 / r2) * v2;
        v3 = v3 - dot(v3, v1) * v1;
        v3 = v3 - dot(v3, v2) * v2;
        const double r3 = norm(v3);
        v3 = (1.0 / r3) * v3;
        if (!(r1 > 0.0) || !(r2 > 0.0) || !(r3 > 0.0)) {
            throw std::runtime_error("lyapunov_spectrum: tangent frame collapsed");
        }
        logsum[0] += std::log(r1);
        logsum[1] += std::log(r2);
        logsum[2] += std::log(r3);

        const double elapsed = static_cast<double>(r + 1) * t_renorm;
        if (elapsed >= 0.9 * total_time) {
            for (int k = 0; k < 3; ++k) {
                const double est = logsum[k] / elapsed;
                tail_lo[k] = std::min(tail_lo[k], est);
                tail_hi[k] = std::max(tail_hi[k], est);
            }
        }
    }

    std::array<int, 3> order{0, 1, 2};
    std::array<double, 3> raw;
    for (int k = 0; k < 3; ++k) raw[k] = logsum[k] / total_time;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[a] > raw[b]; });

    LyapunovSpectrum out;
    out.averaging_time = total_time;
    out.renorm_interval = t_renorm;
    for (int k = 0; k < 3; ++k) {
        out.exponents[k] = raw[order[k]];
        out.tail_variation[k] = tail_hi[order[k]] - tail_lo[order[k]];
    }
    return out;
}

double kaplan_yorke(const LyapunovSpectrum& ls) { return kaplan_yorke_of(ls.exponents); }

double kaplan_yorke(const LyapunovSpectrum& ls, double zero_tol) {
    if (!(zero_tol > 0.0)) throw std::invalid_argument("kaplan_yorke: zero_tol must be > 0");
    std::array<double, 3> lam = ls.exponents;
    for (double& v : lam) {
        if (std::fabs(v) <= zero_tol) v = 0.0;
    }
    return kaplan_yorke_of(lam);
}

AttractorClass classify_attractor(const LyapunovSpectrum& ls, double zero_tol) {
    if (!(zero_tol > 0.0)) throw std::invalid_argument("classify_attractor: zero_tol must be > 0");
    auto sgn = [&](double v) { return std::fabs(v) <= zero_tol ? 0 : (v > 0.0 ? 1 : -1); };
    const int s1 = sgn(ls.exponents[0]);
    const int s2 = sgn(ls.exponents[1]);
    const int s3 = sgn(ls.exponents[2]);
    if (s1 == 1 && s2 == 0 && s3 == -1) return {AttractorKind::Chaos, 0, false};
    if (s1 == 0 && s2 == 0 && s3 == -1) return {AttractorKind::Torus2, 0, false};
    if (s1 == 0 && s2 == -1 && s3 == -1) return {AttractorKind::LimitCycle1, 1, false};
    return {AttractorKind::Unclassified, 0, false};
}

AttractorClass classify_attractor(const LyapunovSpectrum& ls, double zero_tol,
                                  std::span<const double> z_maxima,
                                  double cluster_tol_rel) {
    AttractorClass base = classify_attractor(ls, zero_tol);
    if (base.kind != AttractorKind::LimitCycle1 || z_maxima.size() < 8) return base;
    const PeriodDetection det = detect_period(z_maxima, cluster_tol_rel);
    if (det.ambiguous || !det.sequence_periodic || det.period < 2) return base;
    return {AttractorKind::PeriodicN, det.period, false};
}

PeriodDetection detect_period(std::span<const double> z_maxima, double cluster_tol_rel) {
    if (z_maxima.size() < 8) {
        throw std::invalid_argument("detect_period: need at least 8 maxima");
    }
    if (!(cluster_tol_rel > 0.0)) {
        throw std::invalid_argument("detect_period: cluster_tol_rel must be > 0");
    }

    std::vector<double> sorted(z_maxima.begin(), z_maxima.end());
    std::sort(sorted.begin(), sorted.end());
    const double base = std::max(sorted.back() - sorted.front(), 1e-9);

    auto count_clusters = [&](double tol_rel) {
        const double tau = tol_rel * base;
        int count = 1;
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i] - sorted[i - 1] > tau) ++count;
        }
        return count;
    };

    PeriodDetection out;
    out.period = count_clusters(cluster_tol_rel);
    out.ambiguous = count_clusters(0.5 * cluster_tol_rel) != out.period ||
                    count_clusters(1.5 * cluster_tol_rel) != out.period;

    // Cluster upper edges at the nominal tolerance, for id assignment.
    const double tau = cluster_tol_rel * base;
    std::vector<double> upper;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] > tau) upper.push_back(sorted[i - 1]);
    }
    upper.push_back(sorted.back());

    std::vector<int> seq(z_maxima.size());
    for (std::size_t i = 0; i < z_maxima.size(); ++i) {
        seq[i] = static_cast<int>(
            std::lower_bound(upper.begin(), upper.end(), z_maxima[i]) - upper.begin());
    }
    const auto period = static_cast<std::size_t>(out.period);
    bool periodic = true;
    for (std::size_t i = 0; i + period < seq.size(); ++i) {
        if (seq[i] != seq[i + period]) {
            periodic = false;
            break;
        }
    }
    out.sequence_periodic = periodic;
    return out;
}

bool detect_double_spiral(std::span<const State> cloud, double sym_tol) {
    if (!(sym_tol >= 1e-5 && sym_tol < 1.0)) {
        throw std::invalid_argument("detect_double_spiral: sym_tol out of range [1e-5, 1)");
    }
    if (cloud.empty()) {
        throw std::invalid_argument("detect_double_spiral: empty cloud");
    }

    State lo = cloud[0];
    State hi = cloud[0];
    for (const State& s : cloud) {
        lo.x = std::min(lo.x, s.x);
        lo.y = std::min(lo.y, s.y);
        lo.z = std::min(lo.z, s.z);
        hi.x = std::max(hi.x, s.x);
        hi.y = std::max(hi.y, s.y);
        hi.z = std::max(hi.z, s.z);
    }
    const State ext = hi - lo;
    const double diag = norm(ext);
    if (diag == 0.0) return false;

    const double r = sym_tol * diag;
    const double r2 = r * r;
    const double delta = 0.01 * diag;

    auto cell_of = [&](double v, double origin) {
        return static_cast<std::int64_t>(std::floor((v - origin) / r));
    };
    auto key_of = [](std::int64_t ix, std::int64_t iy, std::int64_t iz) {
        return (static_cast<std::uint64_t>(ix) << 42) |
               (static_cast<std::uint64_t>(iy) << 21) |
               static_cast<std::uint64_t>(iz);
    };

    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    grid.reserve(cloud.size() / 4 + 16);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const std::int64_t ix = cell_of(cloud[i].x, lo.x);
        const std::int64_t iy = cell_of(cloud[i].y, lo.y);
        const std::int64_t iz = cell_of(cloud[i].z, lo.z);
        grid[key_of(ix, iy, iz)].push_back(static_cast<std::uint32_t>(i));
    }
    const std::int64_t max_ix = cell_of(hi.x, lo.x);
    const std::int64_t max_iy = cell_of(hi.y, lo.y);
    const std::int64_t max_iz = cell_of(hi.z, lo.z);

    std::size_t matched = 0;
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (const State& s : cloud) {
        if (s.x > delta) ++pos;
        if (s.x < -delta) ++neg;

        const State q = mirror(s);
        const std::int64_t qx = cell_of(q.x, lo.x);
        const std::int64_t qy = cell_of(q.y, lo.y);
        const std::int64_t qz = cell_of(q.z, lo.z);
        bool found = false;
        for (std::int64_t ix = std::max<std::int64_t>(qx - 1, 0);
             !found && ix <= std::min(qx + 1, max_ix); ++ix) {
            for (std::int64_t iy = std::max<std::int64_t>(qy - 1, 0);
                 !found && iy <= std::min(qy + 1, max_iy); ++iy) {
                for (std::int64_t iz = std::max<std::int64_t>(qz - 1, 0);
                     !found && iz <= std::min(qz + 1, max_iz); ++iz) {
                    const auto it = grid.find(key_of(ix, iy, iz));
                    if (it == grid.end()) continue;
                    for (const std::uint32_t idx : it->second) {
                        const State d = cloud[idx] - q;
                        if (dot(d, d) <= r2) {
                            found = true;
                            break;
                        }
                    }
                }
            }
        }
        if (found) ++matched;
    }

    const double n = static_cast<double>(cloud.size());
    return static_cast<double>(matched) >= (1.0 - sym_tol) * n &&
           static_cast<double>(pos) >= 0.25 * n && static_cast<double>(neg) >= 0.25 * n;
}

bool detect_double_spiral(const Trajectory& traj, double sym_tol) {
    if (traj.states.size() < 10000) {
        throw std::invalid_argument("detect_double_spiral: need at least 10^4 samples");
    }
    return detect_double_spiral(std::span<const State>(traj.states), sym_tol);
}

std::array<std::vector<double>, 2> maxima_by_lobe(const Trajectory& traj) {
    std::vector<double> zv(traj.states.size());
    for (std::size_t i = 0; i < traj.states.size(); ++i) zv[i] = traj.states[i].z;
    const std::vector<Peak> peaks = local_maxima(zv, traj.t);

    std::array<std::vector<double>, 2> lobes;
    std::size_t prev = 0;
    for (const Peak& pk : peaks) {
        const auto it = std::lower_bound(traj.t.begin(), traj.t.end(), pk.time);
        const std::size_t idx =
            std::min<std::size_t>(static_cast<std::size_t>(it - traj.t.begin()),
                                  traj.t.size() - 1);
        double apogee = 0.0;
        for (std::size_t i = prev; i <= idx; ++i) {
            if (std::fabs(traj.states[i].x) > std::fabs(apogee)) apogee = traj.states[i].x;
        }
        lobes[apogee < 0.0 ? 0 : 1].push_back(pk.value);
        prev = idx;
    }
    return lobes;
}

}  // namespace mcg
