#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decaykit/autocorr.hpp"
#include "decaykit/complex_gamma.hpp"
#include "decaykit/moments.hpp"
#include "decaykit/regions.hpp"
#include "decaykit/runner.hpp"
#include "decaykit/survival.hpp"

namespace py = pybind11;
using namespace decaykit;

PYBIND11_MODULE(_decaykit, m)
{
    m.doc() = "Fock-Krylov decay toolkit: densities of states from resonance "
              "poles, survival amplitudes by independent routes, "
              "Wiener-Khinchin transforms and critical-time analysis";

    py::register_exception<Error>(m, "DecayError");

    py::class_<Pole>(m, "Pole")
        .def(py::init([](double sigma, double omega) { return Pole{sigma, omega}; }),
             py::arg("sigma"), py::arg("omega"))
        .def_readwrite("sigma", &Pole::sigma)
        .def_readwrite("omega", &Pole::omega)
        .def_property_readonly("x", &Pole::x)
        .def("__repr__", [](const Pole& p) {
            return "Pole(sigma=" + std::to_string(p.sigma) + ", omega=" + std::to_string(p.omega)
                   + ")";
        });

    py::class_<DimensionlessResonance>(m, "Resonance")
        .def(py::init([](double x_d, double nu, double b_s) {
                 return DimensionlessResonance{x_d, nu, b_s};
             }),
             py::arg("x_d"), py::arg("nu") = 0.5, py::arg("b_s") = 1.0)
        .def_readwrite("x_d", &DimensionlessResonance::x_d)
        .def_readwrite("nu", &DimensionlessResonance::nu)
        .def_readwrite("b_s", &DimensionlessResonance::b_s)
        .def("tau_from_n", &DimensionlessResonance::tau_from_n)
        .def("n_from_tau", &DimensionlessResonance::n_from_tau)
        .def("t_from_tau", &DimensionlessResonance::t_from_tau);

    py::class_<FormFactor>(m, "FormFactor")
        .def_static("exponential", &FormFactor::exponential, py::arg("b"))
        .def_static("constant", &FormFactor::constant)
        .def_static("gaussian", &FormFactor::gaussian, py::arg("a"));

    py::class_<DensityOfStates>(m, "DensityOfStates")
        .def("__call__", [](const DensityOfStates& d, double E) { return d(E); }, py::arg("E"))
        .def("eval_complex", &DensityOfStates::eval_complex, py::arg("z"))
        .def_property_readonly("nu", &DensityOfStates::nu)
        .def_property_readonly("norm", &DensityOfStates::norm)
        .def_property_readonly("beta0", &DensityOfStates::beta0)
        .def("residue", &DensityOfStates::residue, py::arg("s"))
        .def_property_readonly("dominant_index", &DensityOfStates::dominant_index);

    m.def(
        "build_dos",
        [](const DimensionlessResonance& res) { return build_dos(res); },
        py::arg("resonance"), "Single narrow pole at sigma = 1 with an exponential form factor");
    m.def(
        "build_dos",
        [](const std::vector<Pole>& poles, double nu, const FormFactor& ff,
           const std::vector<cplx>& residues) {
            PoleSet ps;
            ps.poles = poles;
            ps.residues = residues;
            return build_dos(ps, nu, ff);
        },
        py::arg("poles"), py::arg("nu"), py::arg("form_factor"),
        py::arg("residues") = std::vector<cplx>{});

    m.def("eval_dos", &eval_dos, py::arg("dos"), py::arg("E"));
    m.def("constant_ff_residues_pair", &constant_ff_residues_pair, py::arg("pole1"),
          py::arg("pole2"), py::arg("nu"));

    // survival amplitudes
    m.def("amplitude_quadrature", &amplitude_quadrature, py::arg("dos"), py::arg("t"),
          py::arg("abs_tol") = 1e-9);
    m.def(
        "amplitude_closed",
        [](const DimensionlessResonance& res, double n) {
            return amplitude_closed_exponential(res, n);
        },
        py::arg("resonance"), py::arg("n"));
    m.def(
        "amplitude_decomposed",
        [](const DensityOfStates& dos, double t) {
            const AmplitudeBreakdown b = amplitude_decomposed(dos, t);
            return py::make_tuple(b.total, b.exponential, b.nonexponential);
        },
        py::arg("dos"), py::arg("t"), "returns (A, A_e, A_ne)");

    py::enum_<Route>(m, "Route")
        .value("quadrature", Route::quadrature)
        .value("closed_form", Route::closed_form)
        .value("decomposition", Route::decomposition);

    py::class_<SurvivalCurve>(m, "SurvivalCurve")
        .def_property_readonly("n",
                               [](const SurvivalCurve& c) {
                                   std::vector<double> v;
                                   for (const auto& g : c.grid) v.push_back(g.n);
                                   return v;
                               })
        .def_property_readonly("tau",
                               [](const SurvivalCurve& c) {
                                   std::vector<double> v;
                                   for (const auto& g : c.grid) v.push_back(g.tau);
                                   return v;
                               })
        .def_readonly("P", &SurvivalCurve::P)
        .def_readonly("P_e", &SurvivalCurve::P_e)
        .def_readonly("P_ne", &SurvivalCurve::P_ne)
        .def_readonly("P_i", &SurvivalCurve::P_i);

    m.def("survival_probability", &survival_probability, py::arg("dos"), py::arg("t_grid"),
          py::arg("route") = Route::decomposition);
    m.def("large_time_asymptote", &large_time_asymptote, py::arg("dos"), py::arg("t"));

    // moments
    m.def("moment", &moment, py::arg("dos"), py::arg("n"));
    m.def("moment_quadrature", &moment_quadrature, py::arg("dos"), py::arg("n"));
    m.def("variance", &variance, py::arg("dos"));
    m.def(
        "negative_variance_interval",
        [](double x_d, double nu) -> py::object {
            const auto w = negative_variance_interval(x_d, nu);
            if (!w) return py::none();
            return py::make_tuple(w->lower, w->upper);
        },
        py::arg("x_d"), py::arg("nu"));
    m.def(
        "taylor_p",
        [](const DensityOfStates& dos, int order) {
            return taylor_p(moment_table(dos, order), order);
        },
        py::arg("dos"), py::arg("order"));

    // autocorrelation / transforms
    m.def("autocorrelation", &autocorrelation, py::arg("dos"), py::arg("y"),
          py::arg("abs_tol") = 1e-9);
    m.def("autocorrelation_lorentzian", &autocorrelation_lorentzian, py::arg("dos"),
          py::arg("y"));
    m.def("sample_autocorrelation", &sample_autocorrelation, py::arg("dos"), py::arg("y_max"),
          py::arg("points"), py::arg("abs_tol") = 1e-9);
    py::class_<AutocorrCurve>(m, "AutocorrCurve")
        .def_readonly("y", &AutocorrCurve::y)
        .def_readonly("R", &AutocorrCurve::R);
    m.def("wk_forward", &wk_forward, py::arg("autocorr"), py::arg("t"));
    py::class_<SampledSurvival>(m, "SampledSurvival")
        .def_readonly("t", &SampledSurvival::t)
        .def_readonly("P", &SampledSurvival::P);
    m.def("sample_survival", &sample_survival, py::arg("dos"), py::arg("t_max"),
          py::arg("points"), py::arg("route") = Route::decomposition);
    m.def("wk_inverse", &wk_inverse, py::arg("survival"), py::arg("y"));
    m.def("lifetime_fleming", &lifetime_fleming, py::arg("survival"));
    m.def(
        "discrete_spectrum",
        [](const std::vector<std::pair<double, double>>& levels, double t) {
            const DiscreteSpectrum d = discrete_spectrum(levels, t);
            std::vector<std::pair<double, double>> lines;
            for (const auto& line : d.autocorr) lines.emplace_back(line.offset, line.weight);
            return py::make_tuple(d.P, lines);
        },
        py::arg("levels"), py::arg("t"), "returns (P, [(offset, weight), ...])");

    // regions
    py::class_<RegionReport>(m, "RegionReport")
        .def_readonly("tau_cs_oscillation", &RegionReport::tau_cs_oscillation)
        .def_readonly("tau_cs_intersection", &RegionReport::tau_cs_intersection)
        .def_readonly("tau_cs_ghirardi", &RegionReport::tau_cs_ghirardi)
        .def_readonly("n_cs_ghirardi", &RegionReport::n_cs_ghirardi)
        .def_readonly("alpha", &RegionReport::alpha)
        .def_readonly("n_cl", &RegionReport::n_cl)
        .def_readonly("n_small", &RegionReport::n_small)
        .def_readonly("n_min_m", &RegionReport::n_min_m)
        .def_readonly("intervals", &RegionReport::intervals);

    py::class_<RegionModel>(m, "RegionModel")
        .def(py::init<const DimensionlessResonance&>(), py::arg("resonance"))
        .def("report", &RegionModel::report)
        .def("piecewise_P", &RegionModel::piecewise_P, py::arg("n"))
        .def_property_readonly("C", [](const RegionModel& r) { return r.constant().C; })
        .def_property_readonly("residue", &RegionModel::residue)
        .def_property_readonly("variance", &RegionModel::variance);

    m.def("critical_time_intersection", &critical_time_intersection, py::arg("alpha"),
          py::arg("R2"));
    m.def("critical_time_first_oscillation", &critical_time_first_oscillation, py::arg("x_d"));
    m.def(
        "ghirardi_critical_time",
        [](double var, double omega_d, double sigma_d) {
            const GhirardiTime g = ghirardi_critical_time(var, omega_d, sigma_d);
            return py::make_tuple(g.tau_G, g.n_G);
        },
        py::arg("variance"), py::arg("omega_d"), py::arg("sigma_d"));
    m.def(
        "table1",
        [](double b_s, double nu, const std::vector<double>& xs) {
            py::list out;
            for (const Table1Row& r : table1(b_s, nu, xs)) {
                py::dict row;
                row["x_d"] = r.x_d;
                row["tau_G"] = r.tau_G;
                row["tau_cs"] = r.root_missing ? py::object(py::none()) : py::float_(r.tau_cs);
                row["four_pi_x_d"] = r.tau_osc;
                row["n_G"] = r.n_G;
                row["n_cs"] = r.root_missing ? py::object(py::none()) : py::float_(r.n_cs);
                out.append(row);
            }
            return out;
        },
        py::arg("b_s") = 2.0, py::arg("nu") = 0.5, py::arg("x_grid"));

    // special functions
    m.def(
        "upper_incomplete_gamma",
        [](double a, cplx z) { return special::upper_incomplete_gamma(a, z); }, py::arg("a"),
        py::arg("z"));
    m.def(
        "log_gamma", [](cplx z) { return special::log_gamma(z); }, py::arg("z"));
    m.def(
        "complex_power", [](cplx z, double p) { return special::complex_power(z, p); },
        py::arg("z"), py::arg("p"));

    // CLI surface, callable in-process
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream err;
            const cli::RunResult r = cli::run(args, err);
            return py::make_tuple(r.exit_code, r.output, err.str());
        },
        py::arg("args"), "returns (exit_code, output, stderr_text)");
}
