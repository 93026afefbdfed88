// SPDX-License-Identifier: Apache-2.0
#include "bregcc/cli.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using bregcc::Json;
using bregcc::Vector;

Vector to_vector(const std::vector<double>& v) {
  Vector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = v[i];
  return out;
}

std::vector<Vector> to_points(const std::vector<std::vector<double>>& rows) {
  std::vector<Vector> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(to_vector(row));
  return out;
}

py::object json_to_py(const Json& j) {
  if (j.is_null()) return py::none();
  if (j.is_boolean()) return py::bool_(j.get<bool>());
  if (j.is_number_integer()) return py::int_(j.get<long long>());
  if (j.is_number()) return py::float_(j.get<double>());
  if (j.is_string()) return py::str(j.get<std::string>());
  if (j.is_array()) {
    py::list out;
    for (const auto& item : j) out.append(json_to_py(item));
    return out;
  }
  py::dict out;
  for (const auto& [key, value] : j.items()) out[py::str(key)] = json_to_py(value);
  return out;
}

int dim_of(const std::vector<Vector>& points) {
  if (points.empty()) throw bregcc::InputError("need at least one point");
  return static_cast<int>(points[0].size());
}

py::object cc_call(const std::string& function,
                   const std::vector<std::vector<double>>& rows,
                   const std::string& operation, std::uint64_t seed) {
  const auto points = to_points(rows);
  const auto fn = bregcc::make_function(function, dim_of(points));
  bregcc::CcResult result;
  if (operation == "backward_cc")
    result = bregcc::backward_circumcenter(
        bregcc::BackwardProblem::create(fn, points));
  else if (operation == "backward_pseudo")
    result = bregcc::backward_pseudo_circumcenter(
        bregcc::BackwardProblem::create(fn, points));
  else if (operation == "forward_cc")
    result = bregcc::forward_circumcenter(
        bregcc::ForwardProblem::create(fn, points), seed);
  else
    result = bregcc::forward_pseudo_circumcenter(
        bregcc::ForwardProblem::create(fn, points));
  return json_to_py(bregcc::cc_result_to_json(result));
}

py::object project_call(const std::string& function,
                        const std::vector<double>& base,
                        const std::vector<std::vector<double>>& directions,
                        const std::vector<double>& y, bool forward) {
  const auto fn =
      bregcc::make_function(function, static_cast<int>(base.size()));
  bregcc::AffineFlat flat = bregcc::AffineFlat::single_point(to_vector(base));
  flat.directions.resize(flat.base.size(), static_cast<int>(directions.size()));
  for (size_t i = 0; i < directions.size(); ++i)
    flat.directions.col(static_cast<int>(i)) = to_vector(directions[i]);
  const bregcc::ProjectionResult result =
      forward ? bregcc::forward_bregman_project(*fn, flat, to_vector(y))
              : bregcc::backward_bregman_project(*fn, flat, to_vector(y));
  py::dict out;
  py::list point;
  for (int i = 0; i < result.point.size(); ++i) point.append(result.point[i]);
  out["point"] = point;
  out["residual"] = result.residual;
  out["iterations"] = result.iterations;
  return out;
}

}  // namespace

PYBIND11_MODULE(_bregcc, m) {
  m.doc() = "Bregman circumcenters: distances, projections, and circumcenter solvers";

  py::register_exception<bregcc::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<bregcc::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<bregcc::UnsupportedError>(m, "UnsupportedError",
                                                   PyExc_ValueError);
  py::register_exception<bregcc::SolveError>(m, "SolveError", PyExc_RuntimeError);

  m.def("list_functions", &bregcc::catalog_names,
        "names of the built-in Legendre functions");

  m.def(
      "bregman_distance",
      [](const std::string& function, const std::vector<double>& x,
         const std::vector<double>& y) {
        const auto fn = bregcc::make_function(function, static_cast<int>(x.size()));
        return bregcc::bregman_distance(*fn, to_vector(x), to_vector(y));
      },
      py::arg("function"), py::arg("x"), py::arg("y"),
      "D_f(x, y); +inf outside the domain");

  m.def(
      "backward_circumcenter",
      [](const std::string& function, const std::vector<std::vector<double>>& points) {
        return cc_call(function, points, "backward_cc", 0);
      },
      py::arg("function"), py::arg("points"));
  m.def(
      "backward_pseudo_circumcenter",
      [](const std::string& function, const std::vector<std::vector<double>>& points) {
        return cc_call(function, points, "backward_pseudo", 0);
      },
      py::arg("function"), py::arg("points"));
  m.def(
      "forward_circumcenter",
      [](const std::string& function, const std::vector<std::vector<double>>& points,
         std::uint64_t seed) { return cc_call(function, points, "forward_cc", seed); },
      py::arg("function"), py::arg("points"), py::arg("seed") = 0);
  m.def(
      "forward_pseudo_circumcenter",
      [](const std::string& function, const std::vector<std::vector<double>>& points) {
        return cc_call(function, points, "forward_pseudo", 0);
      },
      py::arg("function"), py::arg("points"));

  m.def(
      "project_backward",
      [](const std::string& function, const std::vector<double>& base,
         const std::vector<std::vector<double>>& directions,
         const std::vector<double>& y) {
        return project_call(function, base, directions, y, false);
      },
      py::arg("function"), py::arg("base"), py::arg("directions"), py::arg("y"),
      "backward Bregman projection of y onto base + span(directions)");
  m.def(
      "project_forward",
      [](const std::string& function, const std::vector<double>& base,
         const std::vector<std::vector<double>>& directions,
         const std::vector<double>& y) {
        return project_call(function, base, directions, y, true);
      },
      py::arg("function"), py::arg("base"), py::arg("directions"), py::arg("y"),
      "forward Bregman projection of y onto base + span(directions)");

  m.def(
      "verify_equidistance",
      [](const std::string& function, const std::vector<std::vector<double>>& points,
         const std::vector<double>& candidate, const std::string& mode, double tol) {
        const auto sites = to_points(points);
        const auto fn = bregcc::make_function(function, dim_of(sites));
        const auto report = bregcc::verify_equidistance(
            fn, sites, to_vector(candidate),
            mode == "forward" ? bregcc::CcMode::Forward : bregcc::CcMode::Backward,
            tol);
        return json_to_py(bregcc::verification_to_json(report));
      },
      py::arg("function"), py::arg("points"), py::arg("candidate"),
      py::arg("mode") = "backward", py::arg("tol") = 1e-8);

  m.def(
      "check_pseudo_duality",
      [](const std::string& function, const std::vector<std::vector<double>>& points) {
        const auto sites = to_points(points);
        const auto fn = bregcc::make_function(function, dim_of(sites));
        return json_to_py(
            bregcc::duality_report_to_json(bregcc::check_pseudo_duality(fn, sites)));
      },
      py::arg("function"), py::arg("points"));
}
