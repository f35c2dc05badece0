#include "mcg/single_run.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "mcg/analyze.hpp"
#include "mcg/csv.hpp"
#include "mcg/integrate.hpp"
#include "mcg/svg.hpp"

namespace mcg {

namespace {

void print_params(const ModelParams& p, std::ostream& out) {
    out << "alpha=" << g17(p.alpha) << "\n";
    out << "eta=" << g17(p.eta) << "\n";
    out << "a=" << g17(p.a) << "\n";
    out << "b=" << g17(p.b) << "\n";
    out << "mu=" << g17(p.mu) << "\n";
    out << "gamma=" << g17(p.gamma) << "\n";
    out << "theta=" << g17(p.theta) << "\n";
    out << "epsilon=" << g17(p.epsilon) << "\n";
}

std::string complex_str(const std::complex<double>& c) {
    if (c.imag() == 0.0) return g17(c.real());
    const std::string sign = c.imag() < 0 ? "-" : "+";
    return g17(c.real()) + sign + g17(std::fabs(c.imag())) + "i";
}

void print_eigen(const EigenReport& rep, std::ostream& out) {
    out << "lambda1=" << g17(rep.lambda1) << "\n";
    out << "lambda2=" << complex_str(rep.lambda2) << "\n";
    out << "lambda3=" << complex_str(rep.lambda3) << "\n";
    out << "discriminant=" << g17(rep.discriminant) << "\n";
    if (rep.alpha_star) {
        out << "alpha_star=" << g17(*rep.alpha_star) << "\n";
    } else {
        out << "alpha_star=undefined\n";
    }
    out << "fixed_point=" << to_string(rep.classification) << "\n";
}

}  // namespace

void run_single(const RunConfig& cfg, const std::string& out_dir, std::ostream& out) {
    if (cfg.physical) out << "parameters=physical (mapped coefficients below)\n";
    print_params(cfg.params, out);

    const EigenReport rep = origin_eigenvalues(cfg.params);
    print_eigen(rep, out);

    const Trajectory traj = integrate(cfg.params, cfg.initial_state, cfg.integration);
    const std::vector<double> maxima = peak_values(z_maxima(traj));
    out << "samples=" << traj.t.size() << "\n";
    out << "z_maxima_count=" << maxima.size() << "\n";

    const LyapunovSpectrum ls = lyapunov_spectrum(cfg.params, cfg.initial_state, cfg.lyapunov);
    out << "l1=" << g17(ls.exponents[0]) << "\n";
    out << "l2=" << g17(ls.exponents[1]) << "\n";
    out << "l3=" << g17(ls.exponents[2]) << "\n";
    out << "lce_tail_variation=" << g17(ls.tail_variation[0]) << ","
        << g17(ls.tail_variation[1]) << "," << g17(ls.tail_variation[2]) << "\n";
    out << "ky_dim=" << g17(kaplan_yorke(ls, cfg.zero_tol)) << "\n";

    AttractorClass cls = classify_attractor(ls, cfg.zero_tol, maxima, cfg.cluster_tol_rel);
    if (cls.kind == AttractorKind::Chaos && traj.states.size() >= 10000) {
        cls.double_spiral = detect_double_spiral(traj, cfg.sym_tol);
    }
    out << "class=" << to_string(cls.kind) << "\n";
    out << "period=" << cls.period << "\n";
    out << "double_spiral=" << (cls.double_spiral ? 1 : 0)
        << " (heuristic: sym_tol=" << g17(cfg.sym_tol) << ", occupancy 25%)\n";

    write_trajectory_csv(traj, out_dir + "/trajectory.csv");
    write_svg_scatter(traj, Component::X, Component::Y,
                      {"Phase portrait (alpha=" + g17(cfg.params.alpha) + ")", "x", "y"},
                      out_dir + "/phase_xy.svg");
    write_svg_scatter(traj, Component::T, Component::Z,
                      {"z(t) (alpha=" + g17(cfg.params.alpha) + ")", "t", "z"},
                      out_dir + "/series_tz.svg");
    out << "wrote=" << out_dir << "/trajectory.csv\n";
    out << "wrote=" << out_dir << "/phase_xy.svg\n";
    out << "wrote=" << out_dir << "/series_tz.svg\n";
}

void run_eigen_table(const ModelParams& base, double alpha_min, double alpha_max,
                     double alpha_step, std::ostream& out,
                     const std::optional<std::string>& csv_path) {
    if (!(alpha_step > 0.0)) throw std::invalid_argument("eigen: alpha_step must be > 0");
    if (!(alpha_min > 0.0)) throw std::invalid_argument("eigen: alpha_min must be > 0");
    if (!(alpha_max >= alpha_min)) {
        throw std::invalid_argument("eigen: alpha_max must be >= alpha_min");
    }

    std::ofstream csv;
    if (csv_path) {
        csv.open(*csv_path, std::ios::binary | std::ios::trunc);
        if (!csv) throw std::runtime_error("cannot write file: " + *csv_path);
        csv << "alpha,lambda1,re_lambda2,im_lambda2,discriminant,fixed_point\n";
    }

    out << "alpha      lambda1    Re(l2,3)    Im(l2)      discriminant  class\n";
    const auto n =
        static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / alpha_step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double alpha = alpha_min + static_cast<double>(i) * alpha_step;
        const EigenReport rep = origin_eigenvalues(base.with_alpha(alpha));
        char line[160];
        std::snprintf(line, sizeof(line), "%-10.5g %-10.5g %-11.5g %-11.5g %-13.5g %s", alpha,
                      rep.lambda1, rep.lambda2.real(), rep.lambda2.imag(), rep.discriminant,
                      to_string(rep.classification).c_str());
        out << line << "\n";
        if (csv) {
            csv << g17(alpha) << ',' << g17(rep.lambda1) << ',' << g17(rep.lambda2.real()) << ','
                << g17(rep.lambda2.imag()) << ',' << g17(rep.discriminant) << ','
                << to_string(rep.classification) << '\n';
        }
    }
    const EigenReport rep = origin_eigenvalues(base.with_alpha(alpha_min));
    if (rep.alpha_star) {
        out << "alpha_star=" << g17(*rep.alpha_star) << "\n";
    } else {
        out << "alpha_star=undefined (a+theta=0)\n";
    }
}

ThermistorFit fit_thermistor(double r0, double beta, double t0, double t_min, double t_max,
                             int samples) {
    if (samples < 3) throw std::invalid_argument("fit-thermistor: need at least 3 samples");
    if (!(t_max > t_min) || !(t_min > 0.0)) {
        throw std::invalid_argument("fit-thermistor: need 0 < t_min < t_max");
    }
    const PhysicalParams ph(1.0, 1.0, r0, beta, t0, 1.0, 1.0, 1.0, 1.0);
    std::vector<double> truth(static_cast<std::size_t>(samples));
    std::vector<double> surrogate(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * static_cast<double>(i) / (samples - 1);
        truth[static_cast<std::size_t>(i)] = thermistor_resistance(t, ph);
        surrogate[static_cast<std::size_t>(i)] = taylor_resistance(t, ph);
    }
    return {r0, beta, t0, t_min, t_max, samples, coefficient_of_determination(truth, surrogate)};
}

void run_thermistor_fit(const ThermistorFit& fit, std::ostream& out,
                        const std::optional<std::string>& csv_path) {
    out << "r0=" << g17(fit.r0) << "\n";
    out << "beta=" << g17(fit.beta) << "\n";
    out << "t0=" << g17(fit.t0) << "\n";
    out << "t_min=" << g17(fit.t_min) << "\n";
    out << "t_max=" << g17(fit.t_max) << "\n";
    out << "samples=" << fit.samples << "\n";
    out << "r_squared=" << g17(fit.r_squared) << "\n";

    if (!csv_path) return;
    std::ofstream csv(*csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write file: " + *csv_path);
    const PhysicalParams ph(1.0, 1.0, fit.r0, fit.beta, fit.t0, 1.0, 1.0, 1.0, 1.0);
    csv << "T,thermistor,taylor\n";
    for (int i = 0; i < fit.samples; ++i) {
        const double t =
            fit.t_min + (fit.t_max - fit.t_min) * static_cast<double>(i) / (fit.samples - 1);
        csv << g17(t) << ',' << g17(thermistor_resistance(t, ph)) << ','
            << g17(taylor_resistance(t, ph)) << '\n';
    }
}

}  // namespace mcg
