#include "mcg/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mcg {

void SweepSpec::validate() const {
    if (!(alpha_step > 0.0)) throw std::invalid_argument("sweep: alpha_step must be > 0");
    if (!(alpha_max > alpha_min)) {
        throw std::invalid_argument("sweep: alpha_max must be > alpha_min (empty alpha range)");
    }
    if (!(alpha_min > 0.0)) throw std::invalid_argument("sweep: every alpha must be > 0");
    if (workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
    if ((analyses & (kAnalysisMaxima | kAnalysisLce | kAnalysisClassify)) == 0) {
        throw std::invalid_argument("sweep: no analyses selected");
    }
    integration.validate();
    lyapunov.validate();
}

std::vector<double> SweepSpec::alphas() const {
    const auto n =
        static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / alpha_step + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha_min + static_cast<double>(i) * alpha_step;
    return out;
}

namespace {

SweepRow compute_row(const SweepSpec& spec, double alpha) {
    SweepRow row;
    row.alpha = alpha;
    const ModelParams p = spec.base.with_alpha(alpha);
    const bool want_lce = (spec.analyses & (kAnalysisLce | kAnalysisClassify)) != 0;

    std::optional<Trajectory> traj;
    std::vector<double> maxima;
    if ((spec.analyses & (kAnalysisMaxima | kAnalysisClassify)) != 0) {
        try {
            traj = integrate(p, kDefaultInitialState, spec.integration);
        } catch (const DivergenceError&) {
            row.diverged = true;
            return row;
        }
        maxima = peak_values(z_maxima(*traj));
        if ((spec.analyses & kAnalysisMaxima) != 0) row.z_maxima = maxima;
    }

    if (want_lce) {
        LyapunovSpectrum ls;
        try {
            ls = lyapunov_spectrum(p, kDefaultInitialState, spec.lyapunov);
        } catch (const DivergenceError&) {
            row.diverged = true;
            row.z_maxima.clear();
            return row;
        }
        row.spectrum = ls;
        row.ky_dim = kaplan_yorke(ls, spec.zero_tol);
        if ((spec.analyses & kAnalysisClassify) != 0) {
            AttractorClass cls =
                classify_attractor(ls, spec.zero_tol, maxima, spec.cluster_tol_rel);
            if (cls.kind == AttractorKind::Chaos && traj && traj->states.size() >= 10000) {
                cls.double_spiral = detect_double_spiral(*traj, spec.sym_tol);
            }
            row.attractor = cls;
        }
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = spec.alphas();
    std::vector<SweepRow> rows(grid.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
            rows[i] = compute_row(spec, grid[i]);
        }
    };

    if (spec.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const unsigned n = std::min<unsigned>(spec.workers, static_cast<unsigned>(grid.size()));
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

}  // namespace mcg
