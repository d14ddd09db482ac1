#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "finitegap/curve_io.hpp"
#include "finitegap/dirac.hpp"
#include "finitegap/weierstrass.hpp"

namespace py = pybind11;
using namespace finitegap;

namespace {

std::vector<std::tuple<Complex, Complex, int>> glue_of(const CurveSpec& c) {
  std::vector<std::tuple<Complex, Complex, int>> out;
  for (const GluePair& g : c.glue()) out.emplace_back(g.first, g.second, g.multiplicity);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Baker-Akhiezer reconstruction of the Clifford torus";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<CurveSpec>(m, "CurveSpec")
      .def_property_readonly("u", &CurveSpec::u)
      .def_property_readonly("glue", &glue_of)
      .def("to_json", &curve_spec_to_json);

  m.def("clifford_curve", &clifford_curve);
  m.def("parse_curve_spec", &parse_curve_spec, py::arg("text"));
  m.def("genus", [](const CurveSpec& c) {
    const Genus g = genus(c);
    return std::make_pair(g.geometric, g.arithmetic);
  });
  m.def("poles", [](Complex u) { return pole_divisor(u).points; }, py::arg("u") = kCliffordU);

  m.def(
      "psi",
      [](Complex z, Complex lambda) {
        const Spinor s = eval_psi(clifford_provider()(z), lambda);
        return std::make_pair(s.psi1, s.psi2);
      },
      py::arg("z"), py::arg("lam"));
  m.def(
      "coefficients",
      [](Complex z) {
        const BASolution s = clifford_provider()(z);
        return std::make_pair(s.q, s.t);
      },
      py::arg("z"));
  m.def(
      "potential",
      [](Complex z) {
        const BASolution s = clifford_provider()(z);
        return std::make_pair(potential_U(s), potential_V(s));
      },
      py::arg("z"));
  m.def("closed_form_U", &closed_form_U, py::arg("y"));
  m.def(
      "multiplier",
      [](Complex lambda, const std::string& period) {
        if (period != "x" && period != "y") throw py::value_error("period must be 'x' or 'y'");
        return multiplier(clifford_provider(), lambda, period == "x" ? Period::X : Period::Y);
      },
      py::arg("lam"), py::arg("period"));

  m.def(
      "surface",
      [](std::size_t nx, std::size_t ny) {
        const SurfaceGrid g = integrate_surface(clifford_curve(), nx, ny);
        std::vector<Vec3> points;
        for (std::size_t j = 0; j < ny; ++j)
          for (std::size_t i = 0; i < nx; ++i) points.push_back(g.positions(i, j));
        return std::make_pair(points, g.period_defect);
      },
      py::arg("nx") = 64, py::arg("ny") = 64);
  m.def(
      "alignment_error",
      [](std::size_t n) {
        const Alignment a = align_to_reference(integrate_surface(clifford_curve(), n, n));
        return std::make_pair(a.rms, a.max_error);
      },
      py::arg("n") = 64);
  m.def("reference_clifford", &reference_clifford, py::arg("x"), py::arg("y"));
  m.def("willmore_closed_form", [](std::size_t n) { return willmore_closed_form(n); }, py::arg("n") = 256);
  m.def(
      "willmore_reconstructed", [](std::size_t n) { return willmore(integrate_surface(clifford_curve(), n, n)); },
      py::arg("n") = 64);
}
