#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "biofilm/cascade.hpp"
#include "biofilm/diagnostics.hpp"
#include "biofilm/errors.hpp"
#include "biofilm/fmodel.hpp"
#include "biofilm/hmodel.hpp"
#include "biofilm/multipliers.hpp"
#include "biofilm/version.hpp"

namespace py = pybind11;
using namespace biofilm;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw ArgumentError("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

RadiusLaw make_law(const std::string& kind, double alpha, const ModelParams& p) {
  if (kind == "self_similar") return radius_law(RadiusKind::self_similar, alpha, p);
  if (kind == "exp_alpha") return radius_law(RadiusKind::exp_alpha, alpha, p);
  throw ArgumentError("unknown radius law '" + kind + "'");
}

py::dict integrate_samples(py::array_t<double, py::array::c_style | py::array::forcecast> samples,
                           const std::string& model, const ModelParams& params, double t_end,
                           double abs_tol, double rel_tol, double blowup_cap,
                           int snapshot_stride) {
  const auto v = from_array(samples);
  const GridSpec grid(static_cast<int>(v.size()));
  SpectralField f0 = to_spectral(v, grid);
  f0.data()[0] = Complex{};
  IntegratorConfig cfg;
  cfg.t_end = t_end;
  cfg.abs_tol = abs_tol;
  cfg.rel_tol = rel_tol;
  cfg.blowup_cap = blowup_cap;
  cfg.snapshot_stride = snapshot_stride;
  RunRecord rec;
  {
    py::gil_scoped_release release;
    rec = integrate(f0, fmodel_kind_from_string(model), cfg, params);
  }
  py::list snaps;
  for (const auto& s : rec.snapshots) snaps.append(to_array(to_physical(s)));
  py::dict out;
  out["termination"] = std::string(to_string(rec.termination));
  out["times"] = to_array(rec.times);
  out["sup_norms"] = to_array(rec.sup_norms);
  out["h2_norms"] = to_array(rec.h2_norms);
  out["energies"] = to_array(rec.energies);
  out["dissipations"] = to_array(rec.dissipations);
  out["continuation_integral"] = to_array(rec.continuation_integral);
  out["dts"] = to_array(rec.dts);
  out["snapshot_times"] = to_array(rec.snapshot_times);
  out["snapshots"] = snaps;
  out["final"] = snaps.size() ? snaps[snaps.size() - 1] : py::object(py::none());
  return out;
}

py::dict run_height_samples(py::array_t<double, py::array::c_style | py::array::forcecast> h0,
                            const std::string& variant, double extent, const ModelParams& params,
                            const std::string& radius, double radius_alpha, double dt,
                            double t_end, const std::string& scheme) {
  const auto v = from_array(h0);
  const HVariant var = hvariant_from_string(variant);
  const FdGrid grid(geometry_of(var), static_cast<int>(v.size()), extent);
  HeightRunConfig cfg;
  cfg.variant = var;
  cfg.scheme = time_scheme_from_string(scheme);
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.snapshot_times = {t_end};
  const RadiusLaw law = make_law(radius, radius_alpha, params);
  HeightTrajectory traj;
  {
    py::gil_scoped_release release;
    traj = run_height(HeightField{grid, v, 0.0}, params, law, cfg);
  }
  std::vector<double> max_h, mass, width;
  for (const auto& m : traj.metrics) {
    max_h.push_back(m.max_height);
    mass.push_back(m.mass);
    width.push_back(m.support_width);
  }
  py::dict out;
  out["coords"] = to_array(grid.coords());
  out["times"] = to_array(traj.times);
  out["max_height"] = to_array(max_h);
  out["mass"] = to_array(mass);
  out["support_width"] = to_array(width);
  out["final"] = to_array(traj.snapshots.back().h);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral and finite-difference solvers for thin-film biofilm growth";

  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double K, double R0, double alpha, double delta, double epsilon,
                       double h_inf) {
             ModelParams p{K, R0, alpha, delta, epsilon, h_inf};
             p.validate();
             return p;
           }),
           py::arg("K") = 1.0, py::arg("R0") = 1.0, py::arg("alpha") = 0.0,
           py::arg("delta") = 0.0, py::arg("epsilon") = 1.0, py::arg("h_inf") = 1e-3)
      .def_static("autonomous", &ModelParams::autonomous)
      .def_readwrite("K", &ModelParams::K)
      .def_readwrite("R0", &ModelParams::R0)
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("epsilon", &ModelParams::epsilon)
      .def_readwrite("h_inf", &ModelParams::h_inf)
      .def("validate", &ModelParams::validate)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(K=" + std::to_string(p.K) + ", R0=" + std::to_string(p.R0) +
               ", alpha=" + std::to_string(p.alpha) + ", delta=" + std::to_string(p.delta) +
               ", epsilon=" + std::to_string(p.epsilon) + ", h_inf=" + std::to_string(p.h_inf) +
               ")";
      });

  m.def("version", &version);
  m.def("fft_backend_version", &fft_backend_version);

  m.def("q_symbol", &q_symbol, py::arg("k"), py::arg("t"), py::arg("params"));
  m.def("l_symbol", &l_symbol, py::arg("k"), py::arg("t"), py::arg("params"));
  m.def("dispersion_lambda", &dispersion_lambda, py::arg("n"));
  m.def(
      "greens_function",
      [](double t, const ModelParams& p, int n) {
        return to_array(greens_function(t, p, GridSpec(n)));
      },
      py::arg("t"), py::arg("params"), py::arg("n_nodes"));
  m.def(
      "planewave_beta",
      [](double c, double wavenumber, double delta, double t, const ModelParams& p,
         bool capillary_time_factor) {
        StabilityQuery q;
        q.c = c;
        q.wavenumber = wavenumber;
        q.delta = delta;
        q.t = t;
        q.params = p;
        q.capillary_time_factor = capillary_time_factor;
        return planewave_beta(q);
      },
      py::arg("c"), py::arg("wavenumber"), py::arg("delta"), py::arg("t") = 0.0,
      py::arg("params") = ModelParams{}, py::arg("capillary_time_factor") = true);

  m.def("integrate", &integrate_samples, py::arg("samples"), py::arg("model") = "nonautonomous",
        py::arg("params") = ModelParams{}, py::arg("t_end") = 1.0, py::arg("abs_tol") = 1e-10,
        py::arg("rel_tol") = 1e-8, py::arg("blowup_cap") = 1e3, py::arg("snapshot_stride") = 100,
        "Integrate an f-model from physical samples on [0, 2pi); the mean is removed.");

  m.def(
      "cascade_error",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, double epsilon,
         double t_end, const ModelParams& p) {
        const auto v = from_array(samples);
        const GridSpec grid(static_cast<int>(v.size()));
        SpectralField f0 = to_spectral(v, grid);
        f0.data()[0] = Complex{};
        py::gil_scoped_release release;
        return compose_and_compare(f0, epsilon, t_end, p).err_norm;
      },
      py::arg("samples"), py::arg("epsilon"), py::arg("t_end"), py::arg("params"));

  m.def("run_height", &run_height_samples, py::arg("h0"), py::arg("variant") = "scaled_radial",
        py::arg("extent") = 20.0, py::arg("params") = ModelParams{},
        py::arg("radius") = "self_similar", py::arg("radius_alpha") = 0.0, py::arg("dt") = 5e-4,
        py::arg("t_end") = 1.0, py::arg("scheme") = "heun");

  m.def(
      "selfsimilar_profile",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> r, double t,
         const ModelParams& p, const std::string& radius, double radius_alpha) {
        return to_array(selfsimilar_profile(from_array(r), t, make_law(radius, radius_alpha, p), p));
      },
      py::arg("r"), py::arg("t"), py::arg("params"), py::arg("radius") = "self_similar",
      py::arg("radius_alpha") = 0.0);

  m.def(
      "residual_check",
      [](int n_cells, double extent, std::vector<double> times, const ModelParams& p,
         bool scaled) {
        const FdGrid grid(Geometry::radial, n_cells, extent);
        return to_array(residual_check(grid, times, RadiusLaw::self_similar(p.K), p, scaled));
      },
      py::arg("n_cells"), py::arg("extent"), py::arg("times"), py::arg("params"),
      py::arg("scaled") = false);
}
