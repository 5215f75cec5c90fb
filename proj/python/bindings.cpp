#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtlab/conformal.hpp"
#include "mtlab/diagnostics.hpp"
#include "mtlab/families.hpp"
#include "mtlab/functionals.hpp"
#include "mtlab/geometry.hpp"
#include "mtlab/metric_forge.hpp"
#include "mtlab/rearrangement.hpp"
#include "mtlab/search.hpp"
#include "mtlab/spectral.hpp"

namespace py = pybind11;
using namespace mtlab;

namespace {

GridFunction grid_from_array(const py::array_t<double>& a, double xlo, double xhi,
                             double ylo, double yhi) {
  const auto buf = a.request();
  if (buf.ndim != 2) throw std::invalid_argument("expected a 2d array (ny, nx)");
  GridFunction u;
  u.grid.nx = static_cast<int>(buf.shape[1]);
  u.grid.ny = static_cast<int>(buf.shape[0]);
  u.grid.xlo = xlo;
  u.grid.xhi = xhi;
  u.grid.ylo = ylo;
  u.grid.yhi = yhi;
  u.values.resize(static_cast<std::size_t>(u.grid.size()));
  auto r = a.unchecked<2>();
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) u.at(i, j) = r(j, i);
  return u;
}

py::array_t<double> array_from_grid(const GridFunction& u) {
  py::array_t<double> a({u.grid.ny, u.grid.nx});
  auto w = a.mutable_unchecked<2>();
  for (int j = 0; j < u.grid.ny; ++j)
    for (int i = 0; i < u.grid.nx; ++i) w(j, i) = u.at(i, j);
  return a;
}

}  // namespace

PYBIND11_MODULE(_mtlab, m) {
  m.doc() = "Numerical laboratory for Moser-Trudinger constructions";

  m.def("sphere_measure", &sphere_measure, py::arg("N"));
  m.def("sharp_exponent", &sharp_exponent, py::arg("N"));

  m.def(
      "phi_eval",
      [](int N, double u, py::object alpha, int k_trunc) {
        TruncatedExpSpec spec{N, alpha.is_none() ? sharp_exponent(N)
                                                 : alpha.cast<double>(),
                              k_trunc > 0 ? k_trunc : N - 1};
        return phi_eval(spec, u);
      },
      py::arg("N"), py::arg("u"), py::arg("alpha") = py::none(),
      py::arg("k_trunc") = 0);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def("value", &RadialProfile::value)
      .def_property_readonly("support_radius", &RadialProfile::support_radius)
      .def("rescaled", &RadialProfile::rescaled);

  m.def("moser", &moser, py::arg("N"), py::arg("k"));
  m.def("scaled_moser", &scaled_moser, py::arg("N"), py::arg("k"), py::arg("C"));
  m.def("capped_moser", &capped_moser, py::arg("N"), py::arg("R"));

  m.def(
      "dirichlet_energy",
      [](const RadialProfile& u, int N) { return dirichlet_energy(u, N); },
      py::arg("profile"), py::arg("N"));
  m.def(
      "lp_norm",
      [](const RadialProfile& u, double p, int N) { return lp_norm(u, p, N); },
      py::arg("profile"), py::arg("p"), py::arg("N"));
  m.def(
      "mt_functional",
      [](const RadialProfile& u, int N, py::object alpha) {
        TruncatedExpSpec spec{N, alpha.is_none() ? sharp_exponent(N)
                                                 : alpha.cast<double>(),
                              N - 1};
        return mt_functional(u, spec);
      },
      py::arg("profile"), py::arg("N"), py::arg("alpha") = py::none());

  m.def("jensen_lower_bound", &jensen_lower_bound, py::arg("k"));
  m.def("rectangle_lambda1", &rectangle_lambda1, py::arg("k"));
  m.def(
      "lambda1_numeric",
      [](double k, int nx, int ny) {
        const auto res = lambda1_numeric(k, nx, ny);
        return py::make_tuple(res.lambda1, res.iterations, res.residual);
      },
      py::arg("k"), py::arg("nx") = 200, py::arg("ny") = 100);

  m.def(
      "mobius_apply",
      [](const std::vector<double>& a, const std::vector<double>& x) {
        return mobius_apply(MobiusMap(a), x);
      },
      py::arg("a"), py::arg("x"));
  m.def(
      "mobius_ball_image",
      [](const std::vector<double>& a, double R) {
        const auto img = mobius_ball_image(MobiusMap(a), R);
        return py::make_tuple(img.center, img.radius);
      },
      py::arg("a"), py::arg("R"));
  m.def("hyperbolic_density", &hyperbolic_density_2d, py::arg("x1"), py::arg("x2"));
  m.def(
      "disc_strip",
      [](double y1, double y2) {
        const auto x = disc_strip(y1, y2);
        return py::make_tuple(x[0], x[1]);
      },
      py::arg("y1"), py::arg("y2"));
  m.def("disc_strip_jacobian", &disc_strip_jacobian, py::arg("y1"), py::arg("y2"));

  m.def(
      "double_symmetrize",
      [](const py::array_t<double>& a, double xlo, double xhi, double ylo,
         double yhi) {
        return array_from_grid(
            double_symmetrize(grid_from_array(a, xlo, xhi, ylo, yhi)));
      },
      py::arg("values"), py::arg("xlo"), py::arg("xhi"), py::arg("ylo"),
      py::arg("yhi"));
  m.def(
      "steiner",
      [](const py::array_t<double>& a, int axis, double xlo, double xhi, double ylo,
         double yhi) {
        return array_from_grid(steiner(grid_from_array(a, xlo, xhi, ylo, yhi), axis));
      },
      py::arg("values"), py::arg("axis"), py::arg("xlo"), py::arg("xhi"),
      py::arg("ylo"), py::arg("yhi"));
  m.def(
      "schwarz_radii",
      [](const py::array_t<double>& a, double xlo, double xhi, double ylo,
         double yhi) {
        const RadialProfile p = schwarz(grid_from_array(a, xlo, xhi, ylo, yhi), 2);
        const auto& st = std::get<StepProfile>(p.rep());
        return py::make_tuple(st.values, st.radii);
      },
      py::arg("values"), py::arg("xlo"), py::arg("xhi"), py::arg("ylo"),
      py::arg("yhi"));

  py::class_<Nonlinearity>(m, "Nonlinearity")
      .def("__call__", &Nonlinearity::operator())
      .def_readonly("name", &Nonlinearity::name);
  m.def("nl_power", &nl_power, py::arg("p"));
  m.def("nl_phi_alpha", &nl_phi_alpha, py::arg("N"), py::arg("alpha"));
  m.def(
      "growth_index",
      [](const Nonlinearity& f, int N) {
        const auto gi = growth_index(f, N);
        return py::make_tuple(gi.index, gi.converged);
      },
      py::arg("f"), py::arg("N"));
  m.def(
      "case_preset",
      [](int case_id, int N) {
        const auto preset = case_preset(case_id, N, 0.0, 0.0);
        return py::make_tuple(preset.f1, preset.f2);
      },
      py::arg("case_id"), py::arg("N"));
  m.def("tilde_transform", &tilde_transform, py::arg("f"), py::arg("R"), py::arg("N"));

  m.def(
      "maximize_from_eigenfunction",
      [](int k, double L, int nx, int ny, int max_iters) {
        SearchOptions opts;
        opts.max_iters = max_iters;
        opts.rel_tol = 1e-7;
        const SearchState st = maximize(eigenfunction_seed(k, L, nx, ny), opts);
        const CertifyReport rep = certify(st);
        return py::make_tuple(st.value, st.energy, rep.pass);
      },
      py::arg("k") = 2, py::arg("L") = 8.0, py::arg("nx") = 256, py::arg("ny") = 64,
      py::arg("max_iters") = 200);
}
