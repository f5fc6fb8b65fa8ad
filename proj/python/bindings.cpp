#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anisotm/constants.hpp"
#include "anisotm/errors.hpp"
#include "anisotm/functionals.hpp"
#include "anisotm/green.hpp"
#include "anisotm/sequences.hpp"
#include "anisotm/symmetrize.hpp"
#include "anisotm/transplant.hpp"

namespace py = pybind11;
using namespace anisotm;

PYBIND11_MODULE(_anisotm, m) {
  m.doc() = "Anisotropic Trudinger-Moser toolkit";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Gauge>(m, "Gauge")
      .def_static("euclidean", &Gauge::euclidean, py::arg("n") = 2)
      .def_static("pnorm", &Gauge::pnorm, py::arg("n"), py::arg("p"))
      .def_static("quadratic", &Gauge::quadratic, py::arg("A"))
      .def_static("polytope", &Gauge::polytope, py::arg("vertices"))
      .def_static("parse", &Gauge::parse, py::arg("spec"), py::arg("n") = 2)
      .def_property_readonly("dimension", &Gauge::dimension)
      .def_property_readonly("spec", &Gauge::spec)
      .def_property_readonly("smooth", &Gauge::smooth)
      .def_property_readonly("kappa", &Gauge::kappa)
      .def("__call__", &Gauge::eval)
      .def("eval", &Gauge::eval)
      .def("polar", &Gauge::polar)
      .def("grad", &Gauge::grad)
      .def("grad_polar", &Gauge::grad_polar)
      .def("bilipschitz", [](const Gauge& g) {
        const auto b = g.bilipschitz();
        return py::make_tuple(b.alpha, b.beta);
      })
      .def("__repr__", [](const Gauge& g) { return "Gauge('" + g.spec() + "')"; });

  m.def("aniso_perimeter", &aniso_perimeter);
  m.def("unit_ball_volume", &unit_ball_volume);

  py::class_<SharpConstants>(m, "SharpConstants")
      .def_readonly("n", &SharpConstants::n)
      .def_readonly("kappa", &SharpConstants::kappa)
      .def_readonly("beta", &SharpConstants::beta)
      .def_readonly("lambda_n", &SharpConstants::lambda_n)
      .def_readonly("lambda_n_beta", &SharpConstants::lambda_n_beta)
      .def_readonly("omega_n", &SharpConstants::omega_n)
      .def_readonly("alpha_n", &SharpConstants::alpha_n)
      .def_readonly("harmonic_sum", &SharpConstants::harmonic_sum);
  m.def("sharp_constants", &sharp_constants, py::arg("n"), py::arg("kappa"), py::arg("beta") = 0.0);
  m.def("radius_from_robin", &radius_from_robin);
  m.def("robin_from_radius", &robin_from_radius);
  m.def("talenti_constant", &talenti_constant);
  m.def("alvino_constant", &alvino_constant);
  m.def("alpha_p", &alpha_p, py::arg("A"), py::arg("n"), py::arg("p"), py::arg("beta"), py::arg("kappa"));
  m.def("np_value", &np_value, py::arg("A"), py::arg("n"), py::arg("p"), py::arg("beta"), py::arg("kappa"));
  m.def("np_limit", &np_limit, py::arg("A"), py::arg("n"), py::arg("beta"), py::arg("kappa"));
  m.def("concentration_level", &concentration_level, py::arg("kappa"), py::arg("rho"), py::arg("n") = 2,
        py::arg("beta") = 0.0);
  m.def("exp_q", &exp_q);

  py::class_<Domain>(m, "Domain")
      .def_static("disk", &Domain::disk)
      .def_static("wulff_ball", &Domain::wulff_ball)
      .def_static("rectangle", &Domain::rectangle)
      .def_static("polygon", &Domain::polygon)
      .def_static("parse", &Domain::parse, py::arg("spec"), py::arg("gauge"))
      .def("inside", &Domain::inside)
      .def("exact_area", &Domain::exact_area);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("t"), py::arg("v"))
      .def_property_readonly("nodes", &RadialProfile::nodes)
      .def_property_readonly("values", &RadialProfile::values)
      .def("__call__", &RadialProfile::operator())
      .def("slope", &RadialProfile::slope)
      .def("energy", &RadialProfile::energy, py::arg("n"), py::arg("kappa"), py::arg("p") = -1.0,
           py::arg("radius") = 1.0);

  py::class_<SampledField>(m, "SampledField")
      .def_static(
          "sample",
          [](const Domain& d, double h, const std::function<double(double, double)>& f) {
            return SampledField::sample(d, h, f);
          },
          py::arg("domain"), py::arg("h"), py::arg("f"))
      .def_readonly("values", &SampledField::values)
      .def_readonly("weights", &SampledField::weights)
      .def("total_area", &SampledField::total_area)
      .def("dirichlet_energy", &SampledField::dirichlet_energy);

  py::class_<SolveInfo>(m, "SolveInfo")
      .def_readonly("unknowns", &SolveInfo::unknowns)
      .def_readonly("residual", &SolveInfo::residual)
      .def_readonly("boundary_max", &SolveInfo::boundary_max);

  py::class_<GreenField, std::shared_ptr<GreenField>>(m, "GreenField")
      .def_property_readonly("pole", &GreenField::pole)
      .def_property_readonly("h", &GreenField::h)
      .def_property_readonly("kappa", &GreenField::kappa)
      .def_property_readonly("tau", &GreenField::tau)
      .def_property_readonly("rho", &GreenField::rho)
      .def_property_readonly("method", &GreenField::method)
      .def_readonly("info", &GreenField::info)
      .def("G", &GreenField::G)
      .def("gradG", &GreenField::gradG)
      .def("H", &GreenField::H);

  auto shared = [](GreenField g) { return std::make_shared<GreenField>(std::move(g)); };
  m.def("ball_green", [shared](const Gauge& g, const Vec2& c, double r, double h) { return shared(ball_green(g, c, r, h)); },
        py::arg("gauge"), py::arg("center"), py::arg("radius"), py::arg("h") = 1.0 / 256);
  m.def("images_green", [shared](const Domain& d, const Vec2& x0, double h) { return shared(images_green(d, x0, h)); },
        py::arg("domain"), py::arg("pole"), py::arg("h") = 1.0 / 256);
  m.def("solve_robin",
        [shared](const Domain& d, const Gauge& g, const Vec2& x0, double h) { return shared(solve_robin(d, g, x0, h)); },
        py::arg("domain"), py::arg("gauge"), py::arg("pole"), py::arg("h"));
  m.def("harmonic_radius", &harmonic_radius, py::arg("domain"), py::arg("gauge"), py::arg("pole"),
        py::arg("h") = 1.0 / 256);

  py::class_<LevelSetDiagnostics>(m, "LevelSetDiagnostics")
      .def_readonly("t", &LevelSetDiagnostics::t)
      .def_readonly("energy_below", &LevelSetDiagnostics::energy_below)
      .def_readonly("isoperimetric_ratio", &LevelSetDiagnostics::isoperimetric_ratio)
      .def_readonly("radius_ratio", &LevelSetDiagnostics::radius_ratio)
      .def_readonly("area_above", &LevelSetDiagnostics::area_above);
  m.def("level_set_t_max", [](const GreenField& g) { return level_set_t_max(g); });
  m.def("level_set_diagnostics", [](const GreenField& g, double t) { return level_set_diagnostics(g, t); });

  py::class_<TransplantedFunction>(m, "TransplantedFunction")
      .def("value", &TransplantedFunction::value)
      .def("gradient", &TransplantedFunction::gradient);
  m.def("transplant", &transplant, py::arg("profile"), py::arg("green"), py::arg("h") = 0.0);
  m.def("dirichlet_energy", [](const TransplantedFunction& u, double p) { return dirichlet_energy(u, p); });

  py::class_<Symmetrized>(m, "Symmetrized")
      .def_readonly("profile", &Symmetrized::profile)
      .def_readonly("radius", &Symmetrized::radius)
      .def_readonly("kappa", &Symmetrized::kappa);
  m.def("convex_symmetrization", &convex_symmetrization, py::arg("field"), py::arg("gauge"), py::arg("nodes") = 257);
  m.def("hardy_sobolev_quotient", &hardy_sobolev_quotient, py::arg("profile"), py::arg("n"), py::arg("kappa"),
        py::arg("p"), py::arg("beta"), py::arg("radius") = 1.0);

  py::class_<FunctionalValue>(m, "FunctionalValue")
      .def_readonly("value", &FunctionalValue::value)
      .def_readonly("log_value", &FunctionalValue::log_value)
      .def_readonly("overflow_cells", &FunctionalValue::overflow_cells);
  m.def(
      "tm_functional",
      [](const RadialProfile& U, int n, double kappa, double beta, double radius) {
        return tm_functional(U, FunctionalSpec::exact(n, kappa, beta), radius);
      },
      py::arg("profile"), py::arg("n"), py::arg("kappa"), py::arg("beta") = 0.0, py::arg("radius") = 1.0);

  py::class_<SweepEntry>(m, "SweepEntry")
      .def_readonly("epsilon", &SweepEntry::epsilon)
      .def_readonly("phi", &SweepEntry::phi)
      .def_readonly("energy", &SweepEntry::energy)
      .def_readonly("tail_energy", &SweepEntry::tail_energy);
  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("level", &SweepResult::level)
      .def_readonly("entries", &SweepResult::entries)
      .def_readonly("extrapolated", &SweepResult::extrapolated)
      .def_readonly("rel_error", &SweepResult::rel_error);
  m.def(
      "concentration_sweep",
      [](std::shared_ptr<GreenField> g, const std::vector<double>& eps, double beta) {
        SweepOptions opt;
        opt.beta = beta;
        return concentration_sweep(g, eps, opt);
      },
      py::arg("green"), py::arg("eps"), py::arg("beta") = 0.0);

  py::class_<MaximizerResult>(m, "MaximizerResult")
      .def_readonly("profile", &MaximizerResult::profile)
      .def_readonly("phi", &MaximizerResult::phi)
      .def_readonly("phi_validated", &MaximizerResult::phi_validated)
      .def_readonly("level", &MaximizerResult::level)
      .def_readonly("iterations", &MaximizerResult::iterations)
      .def_readonly("certified", &MaximizerResult::certified);
  m.def(
      "radial_maximizer",
      [](double kappa, int nodes, bool zero_start) {
        MaximizerOptions opt;
        opt.kappa = kappa;
        opt.nodes = nodes;
        opt.start = zero_start ? MaximizerOptions::Start::Zero : MaximizerOptions::Start::Psi;
        return radial_maximizer(opt);
      },
      py::arg("kappa"), py::arg("nodes") = 64, py::arg("zero_start") = false);
}
