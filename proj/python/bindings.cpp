#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cslrad/config.hpp"
#include "cslrad/errors.hpp"
#include "cslrad/greens.hpp"
#include "cslrad/kernels.hpp"
#include "cslrad/noise.hpp"
#include "cslrad/oracles.hpp"
#include "cslrad/params.hpp"
#include "cslrad/rates.hpp"
#include "cslrad/study.hpp"

namespace py = pybind11;
using namespace cslrad;
using namespace pybind11::literals;

PYBIND11_MODULE(_core, m) {
  m.doc() = "CSL spontaneous photon emission: rates, kernels and oracle checks";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<KernelRealityError>(m, "KernelRealityError", PyExc_RuntimeError);

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readwrite("e", &PhysicalParams::e)
      .def_readwrite("m", &PhysicalParams::m)
      .def_readwrite("m0", &PhysicalParams::m0)
      .def_readwrite("eps0", &PhysicalParams::eps0)
      .def_readwrite("hbar", &PhysicalParams::hbar)
      .def_readwrite("c", &PhysicalParams::c)
      .def_readwrite("lambda_csl", &PhysicalParams::lambda_csl)
      .def_readwrite("r_C", &PhysicalParams::r_C)
      .def_readwrite("omega0", &PhysicalParams::omega0)
      .def_static("electron", &PhysicalParams::electron)
      .def("validate", &PhysicalParams::validate)
      .def("gamma", &PhysicalParams::gamma);

  py::class_<DerivedParams>(m, "DerivedParams")
      .def_readonly("beta", &DerivedParams::beta)
      .def_readonly("kappa", &DerivedParams::kappa)
      .def_readonly("gamma", &DerivedParams::gamma);
  m.def("derive", &derive, py::arg("params"));

  py::enum_<NoiseKind>(m, "NoiseKind")
      .value("White", NoiseKind::White)
      .value("ExponentialOU", NoiseKind::ExponentialOU)
      .value("GaussianCorr", NoiseKind::GaussianCorr)
      .value("Mixture", NoiseKind::Mixture);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_static("white", &NoiseModel::white)
      .def_static("exponential_ou", &NoiseModel::exponential_ou, py::arg("tau"))
      .def_static("gaussian", &NoiseModel::gaussian, py::arg("tau"))
      .def_static("mixture", &NoiseModel::mixture, py::arg("alpha"), py::arg("first"),
                  py::arg("second"))
      .def_property_readonly("kind", &NoiseModel::kind)
      .def_property_readonly("tau", &NoiseModel::tau)
      .def("rescaled", &NoiseModel::rescaled, py::arg("t_unit"));
  m.def("spectrum", &spectrum, py::arg("model"), py::arg("omega"));
  m.def("correlation", &correlation, py::arg("model"), py::arg("s"));

  py::class_<Oscillator>(m, "Oscillator")
      .def(py::init([](double mass, double beta, double omega0) { return Oscillator{mass, beta, omega0}; }),
           py::arg("mass") = 1.0, py::arg("beta") = 0.0, py::arg("omega0") = 0.0)
      .def_readwrite("mass", &Oscillator::mass)
      .def_readwrite("beta", &Oscillator::beta)
      .def_readwrite("omega0", &Oscillator::omega0)
      .def("damping", &Oscillator::damping);
  m.def("asymptotic_G0", &asymptotic_G0, py::arg("osc"), py::arg("omega_k"), py::arg("t"),
        py::arg("sign"));
  m.def("spurious_bracket", &spurious_bracket, py::arg("osc"));

  py::enum_<Order>(m, "Order")
      .value("LowestOrder", Order::LowestOrder)
      .value("ExactBeta", Order::ExactBeta);
  py::enum_<RateFormula>(m, "RateFormula")
      .value("NaiveFirstOrder", RateFormula::NaiveFirstOrder)
      .value("ResummedHarmonic", RateFormula::ResummedHarmonic)
      .value("ResummedFree", RateFormula::ResummedFree)
      .value("FromPhotonNumber", RateFormula::FromPhotonNumber);

  m.def("i_ab", [](const NoiseModel &model, cplx a, cplx b, double t) { return i_ab(model, a, b, t).value; },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("t"));
  m.def("window_integral", &window_integral, py::arg("model"), py::arg("omega"), py::arg("t"));
  m.def("window_rate", &window_rate, py::arg("model"), py::arg("omega"), py::arg("t"));

  py::class_<KernelSetup>(m, "KernelSetup")
      .def(py::init([](const Oscillator &osc, double omega_k) { return KernelSetup{osc, omega_k}; }),
           py::arg("osc"), py::arg("omega_k") = 1.0)
      .def_readwrite("osc", &KernelSetup::osc)
      .def_readwrite("omega_k", &KernelSetup::omega_k);
  m.def(
      "t_pieces",
      [](const KernelSetup &setup, const NoiseModel &model, double t, Order order) {
        const auto p = t_pieces(setup, model, t, order);
        return py::dict("A"_a = p[0].value, "B"_a = p[1].value, "C"_a = p[2].value,
                        "D"_a = p[3].value);
      },
      py::arg("setup"), py::arg("model"), py::arg("t"), py::arg("order") = Order::LowestOrder,
      "Kernel pieces T_A..T_D in frame units.");
  m.def(
      "t_total",
      [](const KernelSetup &setup, const NoiseModel &model, double t, Order order) {
        return t_total(setup, model, t, order).value;
      },
      py::arg("setup"), py::arg("model"), py::arg("t"), py::arg("order") = Order::LowestOrder);

  m.def("naive_rate", &naive_rate, py::arg("params"), py::arg("model"), py::arg("k"));
  m.def("resummed_rate", &resummed_rate, py::arg("params"), py::arg("model"), py::arg("k"),
        py::arg("guard") = kResonanceGuard);
  m.def("resummed_free", &resummed_free, py::arg("params"), py::arg("model"), py::arg("k"));
  m.def("photon_number", &photon_number, py::arg("params"), py::arg("model"), py::arg("k"),
        py::arg("t"), py::arg("order") = Order::LowestOrder);

  py::class_<SlopeRate>(m, "SlopeRate")
      .def_readonly("rate", &SlopeRate::rate)
      .def_readonly("converged", &SlopeRate::converged)
      .def_readonly("convergence_error", &SlopeRate::convergence_error)
      .def_readonly("frame_slope", &SlopeRate::frame_slope);
  m.def("rate_from_photon_number", &rate_from_photon_number, py::arg("params"), py::arg("model"),
        py::arg("k"), py::arg("t"), py::arg("order") = Order::LowestOrder);

  m.def("frame_slope", &frame_slope, py::arg("setup"), py::arg("model"), py::arg("t"),
        py::arg("order") = Order::LowestOrder);

  m.def(
      "rate_spectrum",
      [](const PhysicalParams &params, const NoiseModel &model, const std::vector<double> &ks,
         RateFormula formula, double t_final, Order order, unsigned jobs) {
        SpectrumOptions o;
        o.t_final = t_final;
        o.order = order;
        o.jobs = jobs;
        RateSpectrum s;
        {
          py::gil_scoped_release release;
          s = rate_spectrum(params, model, ks, formula, o);
        }
        std::vector<double> k, rate;
        std::vector<bool> converged;
        for (const auto &x : s.samples) {
          k.push_back(x.k);
          rate.push_back(x.rate);
          converged.push_back(x.converged);
        }
        return py::dict("k"_a = k, "rate"_a = rate, "converged"_a = converged,
                        "dropped"_a = s.dropped);
      },
      py::arg("params"), py::arg("model"), py::arg("ks"), py::arg("formula"),
      py::arg("t_final") = 0.0, py::arg("order") = Order::LowestOrder, py::arg("jobs") = 1);

  m.def(
      "commutator_identity_check",
      [](std::size_t dim, cplx alpha, cplx a_coef, cplx b_coef) {
        return oracles::commutator_identity_check(dim, alpha, a_coef, b_coef).rel_error;
      },
      py::arg("dim"), py::arg("alpha"), py::arg("a_coef") = 1.0, py::arg("b_coef") = 1.0);

  m.def(
      "run_verify",
      [](double tol_scale, unsigned jobs) {
        VerifyOptions o;
        o.tol_scale = tol_scale;
        o.jobs = jobs;
        std::vector<VerifyCheck> checks;
        {
          py::gil_scoped_release release;
          checks = run_verify(o);
        }
        py::list out;
        for (const auto &c : checks)
          out.append(py::dict("name"_a = c.name, "tolerance"_a = c.tolerance, "error"_a = c.error,
                              "passed"_a = c.passed));
        return out;
      },
      py::arg("tol_scale") = 1.0, py::arg("jobs") = 1);
}
