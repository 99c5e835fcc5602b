#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kickrot/classical.hpp"
#include "kickrot/experiment.hpp"
#include "kickrot/mathieu.hpp"
#include "kickrot/observables.hpp"
#include "kickrot/squeeze.hpp"

namespace py = pybind11;
using namespace kickrot;

namespace {

py::dict trace_dict(const OrientationTrace& t) {
    py::dict d;
    d["t"] = t.times;
    d["O"] = t.values;
    d["config"] = t.config_echo;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kicked dipole-coupled planar rotor pairs.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::enum_<Arrangement>(m, "Arrangement").value("A", Arrangement::A).value("B", Arrangement::B);

    py::class_<RotorPairConfig>(m, "RotorPairConfig")
        .def(py::init<>())
        .def_readwrite("arrangement", &RotorPairConfig::arrangement)
        .def_readwrite("gamma", &RotorPairConfig::gamma)
        .def_readwrite("kick_strength", &RotorPairConfig::kick_strength)
        .def_readwrite("fourier_truncation", &RotorPairConfig::fourier_truncation)
        .def_readwrite("levels", &RotorPairConfig::level_count)
        .def_readwrite("bessel_cutoff", &RotorPairConfig::bessel_cutoff)
        .def_readwrite("grid_size", &RotorPairConfig::grid_size)
        .def("validate", &RotorPairConfig::validate)
        .def("__repr__", [](const RotorPairConfig& c) { return "RotorPairConfig(" + describe(c) + ")"; });

    py::class_<ClassicalConfig>(m, "ClassicalConfig")
        .def(py::init<>())
        .def_readwrite("arrangement", &ClassicalConfig::arrangement)
        .def_readwrite("gamma_cl", &ClassicalConfig::gamma_cl)
        .def_readwrite("ensemble_size", &ClassicalConfig::ensemble_size)
        .def_readwrite("step", &ClassicalConfig::step)
        .def_readwrite("t_max", &ClassicalConfig::t_max)
        .def_readwrite("dt", &ClassicalConfig::dt)
        .def_readwrite("boltzmann_beta", &ClassicalConfig::boltzmann_beta);

    m.def(
        "mathieu_eigenvalues",
        [](double v, double alpha0, int K, int levels) { return solve_basis({v, alpha0, K}, levels).eigenvalues; },
        py::arg("v"), py::arg("alpha0") = 0.0, py::arg("K") = 48, py::arg("levels") = 16,
        "Lowest periodic eigenvalues eps of f'' + [eps - 2 v cos 2(a + alpha0)] f = 0.");

    m.def(
        "orientation_trace",
        [](const RotorPairConfig& c, double t_max, double dt) {
            py::gil_scoped_release release;
            const PairSystem s(c);
            OrientationTrace t = orientation_trace(s, t_max, dt);
            py::gil_scoped_acquire acquire;
            return trace_dict(t);
        },
        py::arg("config"), py::arg("t_max") = long_window, py::arg("dt") = long_window_dt,
        "O(t) after one kick of the ground state.");

    m.def(
        "focal_point",
        [](const RotorPairConfig& c) {
            FocalPoint f{};
            {
                py::gil_scoped_release release;
                f = find_focal_time(PairSystem(c));
            }
            return std::make_pair(f.time, f.value);
        },
        py::arg("config"), "(t_c, O_min) of the first focusing after one kick.");

    m.def("analytic_isolated", &analytic_isolated, py::arg("kick_strength"), py::arg("t"));

    m.def(
        "density",
        [](const RotorPairConfig& c, double t, int size) {
            Eigen::MatrixXd values;
            {
                py::gil_scoped_release release;
                const PairSystem s(c);
                const ModeCoefficients d = expand(apply_kick_grid(ground_state(s), c.kick_strength), s);
                values = density_grid(t > 0.0 ? propagate(d, s, t) : ground_state(s), size).values;
            }
            return values;
        },
        py::arg("config"), py::arg("t"), py::arg("size") = 128,
        "|Psi(t1, t2)|^2 on a size x size grid over [-pi, pi)^2; t = 0 gives the unkicked ground state.");

    m.def(
        "classical_orientation",
        [](const ClassicalConfig& c) {
            OrientationTrace t;
            {
                py::gil_scoped_release release;
                t = classical_orientation(c);
            }
            return trace_dict(t);
        },
        py::arg("config"));

    m.def(
        "squeeze",
        [](const RotorPairConfig& c, int n_pulses, double dt) {
            SqueezeResult r;
            {
                py::gil_scoped_release release;
                SqueezeOptions o;
                o.dt = dt;
                r = accumulative_squeeze(PairSystem(c), n_pulses, c.kick_strength, o);
            }
            py::list pulses;
            for (const auto& p : r.schedule.pulses)
                pulses.append(py::dict(py::arg("k") = p.index, py::arg("t_k") = p.time, py::arg("P_k") = p.strength,
                                       py::arg("t_c") = p.focal_time, py::arg("O_min") = p.focal_value));
            py::dict d = trace_dict(r.trace);
            d["schedule"] = pulses;
            return d;
        },
        py::arg("config"), py::arg("n_pulses") = 7, py::arg("dt") = short_window_dt,
        "Greedy accumulative squeezing; use multi_pulse_config for several strong kicks.");

    m.def("multi_pulse_config", &multi_pulse_config, py::arg("base"));

    m.def(
        "run",
        [](const std::string& text, const std::vector<Setting>& overrides) {
            const ExperimentSpec spec = parse_config(text, overrides);
            std::vector<JobReport> reports;
            {
                py::gil_scoped_release release;
                reports = run(spec);
            }
            py::list out;
            for (const auto& r : reports)
                out.append(py::dict(py::arg("name") = r.name, py::arg("summary") = r.summary,
                                    py::arg("files") = r.files));
            return out;
        },
        py::arg("config_text") = "", py::arg("overrides") = std::vector<Setting>{},
        "Run a `key = value` configuration exactly as the command-line tool does.");

    m.def("echo_config", [](const std::string& text) { return echo_config(parse_config(text)); }, py::arg("config_text"));

    m.def("validate", [] {
        py::list out;
        for (const auto& c : validation_checks()) out.append(py::make_tuple(c.name, c.passed, c.detail));
        return out;
    });
}
