// Python bindings.  Profiles cross the boundary as lists of node values on the
// uniform grid of their own length.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "asdflow/analysis.hpp"
#include "asdflow/cli.hpp"
#include "asdflow/dynamics.hpp"
#include "asdflow/equilibria.hpp"
#include "asdflow/errors.hpp"
#include "asdflow/geometry.hpp"
#include "asdflow/reduced.hpp"

namespace py = pybind11;
using namespace asdflow;

namespace {

PeriodicProfile profile(const std::vector<double>& values) {
    return PeriodicProfile(TorusGrid(values.size()), values);
}

std::vector<double> values(const PeriodicProfile& r) { return {r.values().begin(), r.values().end()}; }

py::dict trajectory_dict(const TrajectoryRecord& t) {
    py::dict d;
    d["times"] = t.times;
    d["volume"] = t.volume;
    d["area"] = t.area;
    d["min_r"] = t.min_r;
    d["max_r"] = t.max_r;
    d["mode_amps"] = t.mode_amps;
    d["termination"] = std::string(to_string(t.termination));
    d["accepted_steps"] = t.accepted_steps;
    d["final"] = values(t.final_profile());
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Axisymmetric surface diffusion on periodic profiles";

    auto argument = py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<UnsupportedParameterError>(m, "UnsupportedParameterError", argument);
    py::register_exception<ClassificationError>(m, "ClassificationError", argument);
    py::register_exception<NoLiftError>(m, "NoLiftError", argument);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("nodes", [](std::size_t n) { return TorusGrid(n).nodes(); }, py::arg("n"));
    m.def("g_divergence", [](const std::vector<double>& r) { return values(g_divergence(profile(r))); }, py::arg("r"));
    m.def("g_quasilinear", [](const std::vector<double>& r) { return values(g_quasilinear(profile(r))); }, py::arg("r"));
    m.def("mean_curvature", [](const std::vector<double>& r) { return values(mean_curvature(profile(r))); }, py::arg("r"));
    m.def("surface_area", [](const std::vector<double>& r) { return surface_area(profile(r)); }, py::arg("r"));
    m.def("volume", [](const std::vector<double>& r) { return volume_functional(profile(r)); }, py::arg("r"));
    m.def("equivalent_cylinder_radius",
          [](const std::vector<double>& r) { return equivalent_cylinder_radius(profile(r)); }, py::arg("r"));

    m.def("unduloid_H", &unduloid_H, py::arg("B"), py::arg("k") = 1);
    m.def("unduloid_profile",
          [](double B, int k, std::size_t n) { return values(unduloid_profile(B, k, TorusGrid(n))); },
          py::arg("B"), py::arg("k") = 1, py::arg("n") = 256);
    m.def("classify", [](double B) { return std::string(to_string(classify_cmc(B).kind)); }, py::arg("B"));

    m.def("cylinder_spectrum",
          [](double radius, std::size_t k_max) {
              std::vector<double> mu;
              for (const auto& e : cylinder_spectrum(radius, k_max, true).entries) mu.push_back(e.mu.real());
              return mu;
          },
          py::arg("radius"), py::arg("k_max") = 5);
    m.def("leading_eigenvalue",
          [](const std::vector<double>& r) { return numerical_spectrum(tangent_jacobian(profile(r))).leading_real(); },
          py::arg("r"));

    m.def("simulate",
          [](const std::vector<double>& r0, double t_end, double dt0, double adapt_tol, std::size_t k_track) {
              SimConfig cfg;
              cfg.t_end = t_end;
              cfg.dt0 = dt0;
              cfg.adapt_tol = adapt_tol;
              cfg.k_track = k_track;
              return trajectory_dict(simulate(profile(r0), cfg));
          },
          py::arg("r0"), py::arg("t_end") = 1.0, py::arg("dt0") = 1e-3, py::arg("adapt_tol") = 1e-8,
          py::arg("k_track") = 4);

    m.def("pitchfork",
          [](int l, const std::vector<double>& B_grid, std::size_t n) {
              const auto f = fit_pitchfork(trace_branch(l, B_grid, n, {false, false, 1}));
              return py::make_tuple(f.lambda0, f.dlambda, f.d2lambda);
          },
          py::arg("l"), py::arg("B_grid"), py::arg("n") = 128);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int code = run_cli(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"));
}
