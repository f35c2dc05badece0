#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "mcg/analyze.hpp"
#include "mcg/config.hpp"
#include "mcg/csv.hpp"
#include "mcg/integrate.hpp"
#include "mcg/model.hpp"
#include "mcg/single_run.hpp"
#include "mcg/svg.hpp"
#include "mcg/sweep.hpp"

namespace py = pybind11;
using namespace mcg;

namespace {

std::string params_repr(const ModelParams& p) {
    std::ostringstream os;
    os << "ModelParams(alpha=" << p.alpha << ", eta=" << p.eta << ", a=" << p.a
       << ", b=" << p.b << ", mu=" << p.mu << ", gamma=" << p.gamma << ", theta=" << p.theta
       << ", epsilon=" << p.epsilon << ")";
    return os.str();
}

std::string state_repr(const State& s) {
    std::ostringstream os;
    os << "State(" << s.x << ", " << s.y << ", " << s.z << ")";
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_mcg, m) {
    m.doc() = "Memristor-circuit chaos toolbox (C++ core)";
    m.attr("__version__") = "1.0.0";

    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

    py::class_<State>(m, "State")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &State::x)
        .def_readwrite("y", &State::y)
        .def_readwrite("z", &State::z)
        .def("__repr__", &state_repr);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<double, double, double, double, double, double, double, double>(),
             py::arg("alpha"), py::arg("eta"), py::arg("a"), py::arg("b"), py::arg("mu"),
             py::arg("gamma"), py::arg("theta"), py::arg("epsilon"))
        .def_readonly("alpha", &ModelParams::alpha)
        .def_readonly("eta", &ModelParams::eta)
        .def_readonly("a", &ModelParams::a)
        .def_readonly("b", &ModelParams::b)
        .def_readonly("mu", &ModelParams::mu)
        .def_readonly("gamma", &ModelParams::gamma)
        .def_readonly("theta", &ModelParams::theta)
        .def_readonly("epsilon", &ModelParams::epsilon)
        .def("with_alpha", &ModelParams::with_alpha, py::arg("alpha"))
        .def("__repr__", &params_repr);

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init<double, double, double, double, double, double, double, double, double>(),
             py::arg("capacitance"), py::arg("inductance"), py::arg("r0"), py::arg("beta"),
             py::arg("t0"), py::arg("heat_capacitance"), py::arg("dissipation"), py::arg("a"),
             py::arg("b"))
        .def_readonly("capacitance", &PhysicalParams::capacitance)
        .def_readonly("inductance", &PhysicalParams::inductance)
        .def_readonly("r0", &PhysicalParams::r0)
        .def_readonly("beta", &PhysicalParams::beta)
        .def_readonly("t0", &PhysicalParams::t0)
        .def_readonly("heat_capacitance", &PhysicalParams::heat_capacitance)
        .def_readonly("dissipation", &PhysicalParams::dissipation)
        .def_readonly("a", &PhysicalParams::a)
        .def_readonly("b", &PhysicalParams::b);

    m.def("reference_params", &reference_params, py::arg("alpha"));
    m.def("physical_to_model", &physical_to_model, py::arg("physical"));
    m.def("memristance", &memristance, py::arg("z"), py::arg("params"));
    m.def("vector_field", &vector_field, py::arg("state"), py::arg("params"));
    m.def("jacobian", &jacobian, py::arg("state"), py::arg("params"));
    m.def("mirror", &mirror, py::arg("state"));
    m.def("thermistor_resistance", &thermistor_resistance, py::arg("temperature"),
          py::arg("physical"));
    m.def("taylor_resistance", &taylor_resistance, py::arg("temperature"), py::arg("physical"));
    m.def(
        "coefficient_of_determination",
        [](const std::vector<double>& observed, const std::vector<double>& predicted) {
            return coefficient_of_determination(observed, predicted);
        },
        py::arg("observed"), py::arg("predicted"));

    py::enum_<Method>(m, "Method")
        .value("FixedRk4", Method::FixedRk4)
        .value("AdaptiveRk45", Method::AdaptiveRk45);

    py::class_<IntegrationSettings>(m, "IntegrationSettings")
        .def(py::init<>())
        .def_readwrite("step", &IntegrationSettings::step)
        .def_readwrite("t_end", &IntegrationSettings::t_end)
        .def_readwrite("t_skip", &IntegrationSettings::t_skip)
        .def_readwrite("stride", &IntegrationSettings::stride)
        .def_readwrite("method", &IntegrationSettings::method)
        .def_readwrite("abs_tol", &IntegrationSettings::abs_tol)
        .def_readwrite("rel_tol", &IntegrationSettings::rel_tol);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("t", &Trajectory::t)
        .def_readonly("states", &Trajectory::states)
        .def("__len__", [](const Trajectory& tr) { return tr.t.size(); });

    m.def(
        "integrate",
        [](const ModelParams& p, const State& s0, const IntegrationSettings& cfg) {
            return integrate(p, s0, cfg);
        },
        py::arg("params"), py::arg("initial_state") = kDefaultInitialState,
        py::arg("settings") = IntegrationSettings{},
        py::call_guard<py::gil_scoped_release>());

    py::class_<Peak>(m, "Peak")
        .def_readonly("time", &Peak::time)
        .def_readonly("value", &Peak::value);

    m.def(
        "local_maxima",
        [](const std::vector<double>& values, const std::vector<double>& times) {
            return local_maxima(values, times);
        },
        py::arg("values"), py::arg("times"));
    m.def("z_maxima", &z_maxima, py::arg("trajectory"));
    m.def("maxima_by_lobe", &maxima_by_lobe, py::arg("trajectory"));

    py::enum_<FixedPointKind>(m, "FixedPointKind")
        .value("SaddleFocus", FixedPointKind::SaddleFocus)
        .value("SaddleNode", FixedPointKind::SaddleNode);

    py::class_<EigenReport>(m, "EigenReport")
        .def_readonly("lambda1", &EigenReport::lambda1)
        .def_readonly("lambda2", &EigenReport::lambda2)
        .def_readonly("lambda3", &EigenReport::lambda3)
        .def_readonly("discriminant", &EigenReport::discriminant)
        .def_readonly("alpha_star", &EigenReport::alpha_star)
        .def_readonly("classification", &EigenReport::classification);

    m.def("origin_eigenvalues", &origin_eigenvalues, py::arg("params"));

    py::class_<LyapunovSettings>(m, "LyapunovSettings")
        .def(py::init<>())
        .def_readwrite("step", &LyapunovSettings::step)
        .def_readwrite("transient", &LyapunovSettings::transient)
        .def_readwrite("averaging", &LyapunovSettings::averaging)
        .def_readwrite("renorm_interval", &LyapunovSettings::renorm_interval);

    py::class_<LyapunovSpectrum>(m, "LyapunovSpectrum")
        .def_readonly("exponents", &LyapunovSpectrum::exponents)
        .def_readonly("averaging_time", &LyapunovSpectrum::averaging_time)
        .def_readonly("renorm_interval", &LyapunovSpectrum::renorm_interval)
        .def_readonly("tail_variation", &LyapunovSpectrum::tail_variation);

    m.def(
        "lyapunov_spectrum",
        [](const ModelParams& p, const State& s0, const LyapunovSettings& settings) {
            return lyapunov_spectrum(p, s0, settings);
        },
        py::arg("params"), py::arg("initial_state") = kDefaultInitialState,
        py::arg("settings") = LyapunovSettings{}, py::call_guard<py::gil_scoped_release>());

    m.def("kaplan_yorke", py::overload_cast<const LyapunovSpectrum&>(&kaplan_yorke),
          py::arg("spectrum"));
    m.def("kaplan_yorke", py::overload_cast<const LyapunovSpectrum&, double>(&kaplan_yorke),
          py::arg("spectrum"), py::arg("zero_tol"));

    py::enum_<AttractorKind>(m, "AttractorKind")
        .value("Torus2", AttractorKind::Torus2)
        .value("LimitCycle1", AttractorKind::LimitCycle1)
        .value("PeriodicN", AttractorKind::PeriodicN)
        .value("Chaos", AttractorKind::Chaos)
        .value("Unclassified", AttractorKind::Unclassified);

    py::class_<AttractorClass>(m, "AttractorClass")
        .def_readonly("kind", &AttractorClass::kind)
        .def_readonly("period", &AttractorClass::period)
        .def_readonly("double_spiral", &AttractorClass::double_spiral)
        .def("__repr__", [](const AttractorClass& c) {
            return "AttractorClass(" + to_string(c.kind) + ", period=" +
                   std::to_string(c.period) + ")";
        });

    m.def("classify_attractor",
          py::overload_cast<const LyapunovSpectrum&, double>(&classify_attractor),
          py::arg("spectrum"), py::arg("zero_tol"));
    m.def(
        "classify_attractor",
        [](const LyapunovSpectrum& ls, double zero_tol, const std::vector<double>& maxima,
           double cluster_tol_rel) {
            return classify_attractor(ls, zero_tol, maxima, cluster_tol_rel);
        },
        py::arg("spectrum"), py::arg("zero_tol"), py::arg("z_maxima"),
        py::arg("cluster_tol_rel"));

    py::class_<PeriodDetection>(m, "PeriodDetection")
        .def_readonly("period", &PeriodDetection::period)
        .def_readonly("ambiguous", &PeriodDetection::ambiguous)
        .def_readonly("sequence_periodic", &PeriodDetection::sequence_periodic);

    m.def(
        "detect_period",
        [](const std::vector<double>& maxima, double cluster_tol_rel) {
            return detect_period(maxima, cluster_tol_rel);
        },
        py::arg("z_maxima"), py::arg("cluster_tol_rel"));

    m.def(
        "detect_double_spiral",
        [](const Trajectory& traj, double sym_tol) { return detect_double_spiral(traj, sym_tol); },
        py::arg("trajectory"), py::arg("sym_tol"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "detect_double_spiral_cloud",
        [](const std::vector<State>& cloud, double sym_tol) {
            return detect_double_spiral(std::span<const State>(cloud), sym_tol);
        },
        py::arg("cloud"), py::arg("sym_tol"));

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("alpha_min", &SweepSpec::alpha_min)
        .def_readwrite("alpha_max", &SweepSpec::alpha_max)
        .def_readwrite("alpha_step", &SweepSpec::alpha_step)
        .def_readwrite("base", &SweepSpec::base)
        .def_readwrite("integration", &SweepSpec::integration)
        .def_readwrite("lyapunov", &SweepSpec::lyapunov)
        .def_readwrite("analyses", &SweepSpec::analyses)
        .def_readwrite("workers", &SweepSpec::workers)
        .def_readwrite("zero_tol", &SweepSpec::zero_tol)
        .def_readwrite("cluster_tol_rel", &SweepSpec::cluster_tol_rel)
        .def_readwrite("sym_tol", &SweepSpec::sym_tol);

    m.attr("ANALYSIS_MAXIMA") = static_cast<unsigned>(kAnalysisMaxima);
    m.attr("ANALYSIS_LCE") = static_cast<unsigned>(kAnalysisLce);
    m.attr("ANALYSIS_CLASSIFY") = static_cast<unsigned>(kAnalysisClassify);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("alpha", &SweepRow::alpha)
        .def_readonly("z_maxima", &SweepRow::z_maxima)
        .def_readonly("spectrum", &SweepRow::spectrum)
        .def_readonly("ky_dim", &SweepRow::ky_dim)
        .def_readonly("attractor", &SweepRow::attractor)
        .def_readonly("diverged", &SweepRow::diverged);

    m.def("run_sweep", &run_sweep, py::arg("spec"), py::call_guard<py::gil_scoped_release>());

    m.def(
        "write_trajectory_csv",
        [](const Trajectory& traj, const std::string& path) { write_trajectory_csv(traj, path); },
        py::arg("trajectory"), py::arg("path"));
    m.def(
        "write_bifurcation_csv",
        [](const std::vector<SweepRow>& rows, const std::string& path) {
            write_bifurcation_csv(rows, path);
        },
        py::arg("rows"), py::arg("path"));
    m.def(
        "write_analysis_csv",
        [](const std::vector<SweepRow>& rows, const std::string& path) {
            write_analysis_csv(rows, path);
        },
        py::arg("rows"), py::arg("path"));

    py::class_<ThermistorFit>(m, "ThermistorFit")
        .def_readonly("r0", &ThermistorFit::r0)
        .def_readonly("beta", &ThermistorFit::beta)
        .def_readonly("t0", &ThermistorFit::t0)
        .def_readonly("t_min", &ThermistorFit::t_min)
        .def_readonly("t_max", &ThermistorFit::t_max)
        .def_readonly("samples", &ThermistorFit::samples)
        .def_readonly("r_squared", &ThermistorFit::r_squared);

    m.def("fit_thermistor", &fit_thermistor, py::arg("r0"), py::arg("beta"), py::arg("t0"),
          py::arg("t_min"), py::arg("t_max"), py::arg("samples") = 121);
}
