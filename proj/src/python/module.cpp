#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "dimerfl/effective.hpp"
#include "dimerfl/errors.hpp"
#include "dimerfl/estimation.hpp"
#include "dimerfl/lindblad.hpp"
#include "dimerfl/observables.hpp"
#include "dimerfl/params.hpp"
#include "dimerfl/spectrum.hpp"

namespace py = pybind11;
using namespace dimerfl;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(py::ssize_t(v.size()));
    std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
    return out;
}

std::vector<double> from_array(const py::array_t<double>& a) {
    const auto r = a.unchecked<1>();
    std::vector<double> v(std::size_t(r.shape(0)));
    for (py::ssize_t i = 0; i < r.shape(0); ++i) v[std::size_t(i)] = r(i);
    return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coupled-emitter fluorescence simulator (C++ core)";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::enum_<CouplingMode>(m, "CouplingMode")
        .value("Direct", CouplingMode::Direct)
        .value("NearField", CouplingMode::NearField)
        .value("Exact", CouplingMode::Exact);

    py::enum_<Basis>(m, "Basis").value("Bare", Basis::Bare).value("Collective", Basis::Collective);

    py::class_<SystemParams>(m, "SystemParams")
        .def_static("from_j_delta", &SystemParams::from_j_delta, py::arg("j_coupling"),
                    py::arg("delta_emit"))
        .def_static("from_kr12", &SystemParams::from_kr12, py::arg("kr12"),
                    py::arg("delta_emit"), py::arg("mode") = CouplingMode::NearField,
                    py::arg("mu_dot_r") = 0.0)
        .def_static("from_beta", &SystemParams::from_beta, py::arg("big_r"), py::arg("beta"))
        .def("with_drive", &SystemParams::with_drive, py::arg("omega"), py::arg("delta_laser"))
        .def("with_rates", &SystemParams::with_rates, py::arg("gamma"), py::arg("gamma12"))
        .def("with_detector", &SystemParams::with_detector, py::arg("det_linewidth"))
        .def("at_kr12", &SystemParams::at_kr12, py::arg("kr12"))
        .def("validate", &SystemParams::validate)
        .def("validity_warnings", &SystemParams::validity_warnings)
        .def_readwrite("delta_laser", &SystemParams::delta_laser)
        .def_readwrite("delta_emit", &SystemParams::delta_emit)
        .def_readwrite("omega_drive", &SystemParams::omega_drive)
        .def_readwrite("j_coupling", &SystemParams::j_coupling)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("gamma12", &SystemParams::gamma12)
        .def_readonly("big_r", &SystemParams::big_r)
        .def_readonly("beta", &SystemParams::beta)
        .def_readonly("kr12", &SystemParams::kr12)
        .def_readwrite("mu_dot_r", &SystemParams::mu_dot_r)
        .def_readwrite("det_linewidth", &SystemParams::det_linewidth)
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(J=" + std::to_string(p.j_coupling) +
                   ", delta_emit=" + std::to_string(p.delta_emit) +
                   ", omega=" + std::to_string(p.omega_drive) +
                   ", delta=" + std::to_string(p.delta_laser) + ")";
        });

    m.def(
        "coupling_from_distance",
        [](double kr12, double g1, double g2, double mu, CouplingMode mode) {
            const auto c = coupling_from_distance(kr12, g1, g2, mu, mode);
            return py::make_tuple(c.j_coupling, c.gamma12);
        },
        py::arg("kr12"), py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0,
        py::arg("mu_dot_r") = 0.0, py::arg("mode") = CouplingMode::NearField);
    m.def("mixing_angle", &mixing_angle, py::arg("delta_emit"), py::arg("j_coupling"));
    m.def(
        "params_from_beta",
        [](double r, double beta) {
            const auto jd = params_from_beta(r, beta);
            return py::make_tuple(jd.j_coupling, jd.delta_emit);
        },
        py::arg("big_r"), py::arg("beta"));

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const Matrix4cd& mat, Basis basis) {
                 return DensityMatrix{mat, basis};
             }),
             py::arg("matrix"), py::arg("basis") = Basis::Bare)
        .def_property_readonly("matrix", [](const DensityMatrix& r) { return r.m; })
        .def_readonly("basis", &DensityMatrix::basis)
        .def("is_physical", &DensityMatrix::is_physical, py::arg("herm_tol") = 1e-10,
             py::arg("trace_tol") = 1e-10, py::arg("pos_tol") = 1e-9)
        .def("min_eigenvalue", &DensityMatrix::min_eigenvalue);

    m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"));
    m.def(
        "build_liouvillian",
        [](const SystemParams& p) { return build_liouvillian(p).m; }, py::arg("params"),
        "16x16 master-equation generator acting on column-stacked rho");
    m.def(
        "steady_state",
        [](const SystemParams& p) { return steady_state(build_liouvillian(p)); },
        py::arg("params"));
    m.def("to_collective_basis", &to_collective_basis, py::arg("rho"), py::arg("beta"));
    m.def("to_bare_basis", &to_bare_basis, py::arg("rho"), py::arg("beta"));

    m.def("two_photon_rabi", &two_photon_rabi, py::arg("omega"), py::arg("big_r"),
          py::arg("beta"));

    py::class_<EffectiveRates>(m, "EffectiveRates")
        .def_readonly("omega_2p", &EffectiveRates::omega_2p)
        .def_readonly("lamb", &EffectiveRates::lamb)
        .def_readonly("omega_s", &EffectiveRates::omega_s)
        .def_readonly("omega_a", &EffectiveRates::omega_a)
        .def_readonly("gamma_s", &EffectiveRates::gamma_s)
        .def_readonly("gamma_a", &EffectiveRates::gamma_a)
        .def_readonly("gamma_c", &EffectiveRates::gamma_c);
    m.def("effective_rates", &effective_rates, py::arg("params"));

    py::class_<Model2pPopulations>(m, "Model2pPopulations")
        .def_readonly("rho2_ee", &Model2pPopulations::rho2_ee)
        .def_readonly("rho2_ss", &Model2pPopulations::rho2_ss)
        .def_readonly("rho2_aa", &Model2pPopulations::rho2_aa);
    m.def("model2p_steady", &model2p_steady, py::arg("params"));

    py::class_<Model1pState>(m, "Model1pState")
        .def_readonly("rho1_ss", &Model1pState::rho1_ss)
        .def_readonly("rho1_aa", &Model1pState::rho1_aa)
        .def_readonly("rho1_sa", &Model1pState::rho1_sa)
        .def_readonly("rho1_ee", &Model1pState::rho1_ee);
    m.def("model1p_steady", &model1p_steady, py::arg("params"));

    py::class_<EffectiveSteadyState>(m, "EffectiveSteadyState")
        .def_readonly("rho2_ee", &EffectiveSteadyState::rho2_ee)
        .def_readonly("rho2_ss", &EffectiveSteadyState::rho2_ss)
        .def_readonly("rho2_aa", &EffectiveSteadyState::rho2_aa)
        .def_readonly("rho1_ss", &EffectiveSteadyState::rho1_ss)
        .def_readonly("rho1_aa", &EffectiveSteadyState::rho1_aa)
        .def_readonly("rho1_sa", &EffectiveSteadyState::rho1_sa)
        .def_readonly("rho1_ee", &EffectiveSteadyState::rho1_ee)
        .def_readonly("combined_ee", &EffectiveSteadyState::combined_ee)
        .def_readonly("combined_ss", &EffectiveSteadyState::combined_ss)
        .def_readonly("combined_aa", &EffectiveSteadyState::combined_aa)
        .def_readonly("combined_sa", &EffectiveSteadyState::combined_sa)
        .def_readonly("warnings", &EffectiveSteadyState::warnings);
    m.def("combined_steady", &combined_steady, py::arg("params"));

    m.def("intensity_exact", &intensity_exact, py::arg("rho"));
    m.def(
        "intensity_effective",
        [](const EffectiveSteadyState& s, double beta) {
            const auto i = intensity_effective(s, beta);
            return py::make_tuple(i.total, i.first, i.second);
        },
        py::arg("state"), py::arg("beta"), "returns (I, I1, I2)");
    m.def("g2_zero", &g2_zero, py::arg("rho"));
    m.def("g2_zero_operator", &g2_zero_operator, py::arg("rho"));

    py::class_<VisibilityCrossover>(m, "VisibilityCrossover")
        .def_readonly("v2p", &VisibilityCrossover::v2p)
        .def_readonly("omega_v", &VisibilityCrossover::omega_v)
        .def_readonly("warnings", &VisibilityCrossover::warnings);
    m.def("visibility_crossover", &visibility_crossover, py::arg("params"));

    py::class_<EmissionObservables>(m, "EmissionObservables")
        .def_readonly("intensity", &EmissionObservables::intensity)
        .def_readonly("g2", &EmissionObservables::g2)
        .def_readonly("i_first", &EmissionObservables::i_first)
        .def_readonly("i_second", &EmissionObservables::i_second)
        .def_readonly("i_eff", &EmissionObservables::i_eff)
        .def_readonly("visibility", &EmissionObservables::visibility)
        .def_readonly("omega_v", &EmissionObservables::omega_v);
    m.def("emission_observables", &emission_observables, py::arg("params"));

    py::class_<SpectralSeries>(m, "SpectralSeries")
        .def_property_readonly("omegas", [](const SpectralSeries& s) { return to_array(s.omegas); })
        .def_property_readonly("total", [](const SpectralSeries& s) { return to_array(s.total); })
        .def_property_readonly("s1", [](const SpectralSeries& s) { return to_array(s.s1); })
        .def_property_readonly("s2", [](const SpectralSeries& s) { return to_array(s.s2); })
        .def_property_readonly("s12", [](const SpectralSeries& s) { return to_array(s.s12); })
        .def_property_readonly("s21", [](const SpectralSeries& s) { return to_array(s.s21); })
        .def_readonly("det_linewidth", &SpectralSeries::det_linewidth);

    m.def(
        "rf_spectrum",
        [](const SystemParams& p, const py::array_t<double>& omegas) {
            return rf_spectrum(p, from_array(omegas));
        },
        py::arg("params"), py::arg("omegas"));
    m.def(
        "spectral_function",
        [](const SystemParams& p, const Matrix4cd& a, const Matrix4cd& b,
           const py::array_t<double>& omegas, double gamma_det) {
            const auto liou = build_liouvillian(p);
            const auto rho = steady_state(liou);
            return to_array(spectral_function(liou, rho, a, b, from_array(omegas), gamma_det));
        },
        py::arg("params"), py::arg("a"), py::arg("b"), py::arg("omegas"),
        py::arg("gamma_det") = 0.0);

    py::class_<Transition>(m, "Transition")
        .def_readonly("from_level", &Transition::from)
        .def_readonly("to_level", &Transition::to)
        .def_readonly("omega", &Transition::omega);

    py::class_<DressedLadder>(m, "DressedLadder")
        .def_readonly("energies", &DressedLadder::energies)
        .def_property_readonly("states", [](const DressedLadder& l) { return l.states; })
        .def_readonly("transitions", &DressedLadder::transitions)
        .def_readonly("omega_2ps", &DressedLadder::omega_2ps)
        .def_readonly("warnings", &DressedLadder::warnings);
    m.def("dressed_ladder", &dressed_ladder, py::arg("params"));

    py::class_<StrongDrivingEigensystem>(m, "StrongDrivingEigensystem")
        .def_readonly("energies", &StrongDrivingEigensystem::energies)
        .def_property_readonly("states",
                               [](const StrongDrivingEigensystem& s) { return s.states; });
    m.def("strong_driving_eigensystem", &strong_driving_eigensystem, py::arg("params"));

    py::class_<Peak>(m, "Peak")
        .def_readonly("omega", &Peak::omega)
        .def_readonly("height", &Peak::height);
    m.def(
        "detect_peaks",
        [](const py::array_t<double>& omegas, const py::array_t<double>& values,
           double prominence, double feature_scale) {
            const auto out =
                detect_peaks(from_array(omegas), from_array(values), prominence, feature_scale);
            return py::make_tuple(out.peaks, out.warnings);
        },
        py::arg("omegas"), py::arg("values"), py::arg("prominence") = 1e-3,
        py::arg("feature_scale") = 0.0, "returns (peaks, warnings)");

    m.def("poisson_count_prob", &poisson_count_prob, py::arg("mean"), py::arg("n"));
    m.def(
        "spectrum_sensitivity",
        [](const SystemParams& p, double kr12, const py::array_t<double>& omegas, double step) {
            return to_array(spectrum_sensitivity(p, kr12, from_array(omegas), step));
        },
        py::arg("params"), py::arg("kr12"), py::arg("omegas"), py::arg("step"));

    py::class_<GridInfo>(m, "GridInfo")
        .def_readonly("lo", &GridInfo::lo)
        .def_readonly("hi", &GridInfo::hi)
        .def_readonly("n", &GridInfo::n);

    py::class_<FisherReport>(m, "FisherReport")
        .def_readonly("fisher", &FisherReport::fisher)
        .def_readonly("crlb", &FisherReport::crlb)
        .def_readonly("kr12", &FisherReport::kr12)
        .def_readonly("delta_laser", &FisherReport::delta_laser)
        .def_readonly("omega_drive", &FisherReport::omega_drive)
        .def_readonly("grid", &FisherReport::grid)
        .def_readonly("fd_step", &FisherReport::fd_step)
        .def_readonly("eta", &FisherReport::eta)
        .def_readonly("n_points_used", &FisherReport::n_points_used)
        .def_readonly("n_points_excluded", &FisherReport::n_points_excluded);

    py::class_<FisherOptions>(m, "FisherOptions")
        .def(py::init<>())
        .def_readwrite("step_rel", &FisherOptions::step_rel)
        .def_readwrite("eta", &FisherOptions::eta)
        .def_readwrite("floor_rel", &FisherOptions::floor_rel)
        .def_readwrite("richardson_check", &FisherOptions::richardson_check);

    m.def(
        "fisher_information",
        [](const SystemParams& p, double kr12, const py::array_t<double>& omegas,
           const FisherOptions& opt) {
            return fisher_information(p, kr12, from_array(omegas), opt);
        },
        py::arg("params"), py::arg("kr12"), py::arg("omegas"),
        py::arg("options") = FisherOptions{});

    py::enum_<SweepAxis>(m, "SweepAxis")
        .value("Omega", SweepAxis::Omega)
        .value("DeltaLaser", SweepAxis::DeltaLaser)
        .value("Kr12", SweepAxis::Kr12);

    py::class_<AxisSpec>(m, "AxisSpec")
        .def(py::init([](SweepAxis axis, double lo, double hi, std::size_t n, bool log) {
                 return AxisSpec{axis, lo, hi, n, log};
             }),
             py::arg("axis"), py::arg("lo"), py::arg("hi"), py::arg("n"),
             py::arg("log") = false)
        .def("values", [](const AxisSpec& a) { return to_array(a.values()); });

    m.def(
        "fisher_map",
        [](const SystemParams& p, const AxisSpec& a1, const AxisSpec& a2,
           const py::array_t<double>& omegas, unsigned jobs, const FisherOptions& opt) {
            const auto map = fisher_map(p, a1, a2, from_array(omegas), jobs, opt);
            py::list rows;
            for (const auto& r : map.cells) {
                py::list row;
                for (const auto& c : r) row.append(c);
                rows.append(row);
            }
            return rows;
        },
        py::arg("params"), py::arg("axis1"), py::arg("axis2"), py::arg("omegas"),
        py::arg("jobs") = 1, py::arg("options") = FisherOptions{});

    m.def("linear_grid", [](double lo, double hi, std::size_t n) {
        return to_array(linear_grid(lo, hi, n));
    });
}
