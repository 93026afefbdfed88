// SPDX-License-Identifier: Apache-2.0
#include "bregcc/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace bregcc {
namespace {

const std::set<std::string>& known_operations() {
  static const std::set<std::string> ops = {
      "backward_cc",     "backward_pseudo", "forward_cc",
      "forward_pseudo",  "distance",        "project_backward",
      "project_forward", "duality_check",   "verify"};
  return ops;
}

[[noreturn]] void fail(const std::string& message) { throw InputError(message); }

}  // namespace

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) fail("expected an array of numbers");
  Vector v(j.size());
  int i = 0;
  for (const auto& entry : j) {
    if (!entry.is_number()) fail("expected an array of numbers");
    v[i++] = entry.get<double>();
  }
  return v;
}

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
  return v;
}

Json vector_to_json(const Vector& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(number_to_json(v[i]));
  return arr;
}

ProblemSpec parse_problem(const Json& j) {
  if (!j.is_object()) fail("problem file must hold a JSON object");
  ProblemSpec p;

  if (!j.contains("function") || !j.at("function").is_string())
    fail("missing or malformed 'function'");
  p.function = j.at("function").get<std::string>();

  if (!j.contains("operation") || !j.at("operation").is_string())
    fail("missing or malformed 'operation'");
  p.operation = j.at("operation").get<std::string>();
  if (!known_operations().count(p.operation))
    fail("unknown operation '" + p.operation + "'");

  if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty())
    fail("missing or empty 'points'");
  for (const auto& entry : j.at("points")) p.points.push_back(vector_from_json(entry));

  p.dimension = static_cast<int>(p.points[0].size());
  if (j.contains("dimension")) {
    if (!j.at("dimension").is_number_integer()) fail("malformed 'dimension'");
    p.dimension = j.at("dimension").get<int>();
  }
  for (const auto& pt : p.points)
    if (pt.size() != p.dimension)
      fail("point dimensions disagree with the problem dimension");

  if (j.contains("options")) {
    const Json& o = j.at("options");
    if (!o.is_object()) fail("'options' must be an object");
    if (o.contains("tol")) {
      if (!o.at("tol").is_number() || o.at("tol").get<double>() <= 0.0)
        fail("'options.tol' must be a positive number");
      p.tol = o.at("tol").get<double>();
    }
    if (o.contains("seed")) {
      if (!o.at("seed").is_number_unsigned() && !o.at("seed").is_number_integer())
        fail("'options.seed' must be an integer");
      p.seed = o.at("seed").get<std::uint64_t>();
    }
    if (o.contains("emit_plot")) {
      if (!o.at("emit_plot").is_boolean()) fail("'options.emit_plot' must be a boolean");
      p.emit_plot = o.at("emit_plot").get<bool>();
    }
    if (o.contains("mode")) {
      if (!o.at("mode").is_string()) fail("'options.mode' must be a string");
      p.mode = o.at("mode").get<std::string>();
    }
    if (o.contains("candidate")) p.candidate = vector_from_json(o.at("candidate"));
    if (o.contains("flat")) {
      const Json& fj = o.at("flat");
      if (!fj.is_object() || !fj.contains("base")) fail("'options.flat' needs a 'base'");
      AffineFlat flat = AffineFlat::single_point(vector_from_json(fj.at("base")));
      if (fj.contains("directions")) {
        const Json& dirs = fj.at("directions");
        if (!dirs.is_array()) fail("'options.flat.directions' must be an array");
        flat.directions.resize(flat.base.size(), static_cast<int>(dirs.size()));
        int col = 0;
        for (const auto& d : dirs) {
          const Vector dir = vector_from_json(d);
          if (dir.size() != flat.base.size())
            fail("flat direction dimension mismatch");
          flat.directions.col(col++) = dir;
        }
      }
      p.flat = std::move(flat);
    }
  }

  if (j.contains("expected")) {
    const Json& e = j.at("expected");
    if (!e.is_object()) fail("'expected' must be an object");
    ProblemSpec::Expectation exp;
    if (e.contains("status")) exp.status = e.at("status").get<std::string>();
    if (e.contains("point")) exp.point = vector_from_json(e.at("point"));
    if (e.contains("value")) exp.value = e.at("value").get<double>();
    if (e.contains("duality_status"))
      exp.duality_status = e.at("duality_status").get<std::string>();
    if (e.contains("tolerance")) exp.tolerance = e.at("tolerance").get<double>();
    p.expected = std::move(exp);
  }
  return p;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open problem file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& err) {
    fail("malformed problem file '" + path + "': " + err.what());
  }
  try {
    return parse_problem(j);
  } catch (const InputError& err) {
    fail("problem file '" + path + "': " + err.what());
  }
}

std::string region_string(Region r) {
  switch (r) {
    case Region::Interior: return "Interior";
    case Region::Boundary: return "Boundary";
    default: return "Outside";
  }
}

std::string duality_status_string(DualityStatus s) {
  switch (s) {
    case DualityStatus::Match: return "Match";
    case DualityStatus::Mismatch: return "Mismatch";
    default: return "Inapplicable";
  }
}

std::string oracle_method_string(OracleMethod m) {
  switch (m) {
    case OracleMethod::GridSearch: return "GridSearch";
    case OracleMethod::ScalarRootFind: return "ScalarRootFind";
    default: return "ConstraintResidual";
  }
}

std::string status_string(const CcResult& result) {
  switch (result.set.kind) {
    case SetKind::Empty:
      // Uncertified emptiness from a diverged solver is only a warning.
      return result.status == CcStatus::NumericalNonexistence ? "Warning" : "Empty";
    case SetKind::Flat:
      return "Flat";
    default:
      if (result.status == CcStatus::OutsideDomain) return "Empty";
      return result.status == CcStatus::Ok ? "Unique" : "Warning";
  }
}

Json solution_set_to_json(const SolutionSet& set) {
  Json j;
  switch (set.kind) {
    case SetKind::Empty: j["kind"] = "Empty"; break;
    case SetKind::UniquePoint: j["kind"] = "UniquePoint"; break;
    case SetKind::Flat: j["kind"] = "Flat"; break;
  }
  if (set.point.size() > 0) j["point"] = vector_to_json(set.point);
  if (!set.null_basis.empty()) {
    Json basis = Json::array();
    for (const Vector& dir : set.null_basis) basis.push_back(vector_to_json(dir));
    j["null_basis"] = basis;
  }
  return j;
}

Json cc_result_to_json(const CcResult& result) {
  Json j;
  j["status"] = status_string(result);
  if (result.set.point.size() > 0) {
    j["point"] = vector_to_json(result.set.point);
    j["domain"] = region_string(result.domain);
    j["in_domain"] = result.domain != Region::Outside;
  }
  if (!result.set.null_basis.empty()) {
    Json basis = Json::array();
    for (const Vector& dir : result.set.null_basis) basis.push_back(vector_to_json(dir));
    j["null_basis"] = basis;
  }
  if (!std::isnan(result.equidistance_residual))
    j["equidistance_residual"] = number_to_json(result.equidistance_residual);
  j["solver_residual"] = number_to_json(result.solver_residual);
  if (!result.detail.empty()) j["detail"] = result.detail;
  return j;
}

Json verification_to_json(const VerificationReport& report) {
  Json j;
  j["claim"] = report.claim;
  j["method"] = oracle_method_string(report.method);
  j["worst_residual"] = number_to_json(report.worst_residual);
  j["verdict"] = report.pass ? "Pass" : "Fail";
  if (!report.detail.empty()) j["detail"] = report.detail;
  return j;
}

Json duality_report_to_json(const DualityReport& report) {
  Json j;
  j["status"] = duality_status_string(report.status);
  j["max_deviation"] = number_to_json(report.max_deviation);
  j["lhs"] = solution_set_to_json(report.lhs);
  j["rhs"] = solution_set_to_json(report.rhs);
  if (!report.detail.empty()) j["detail"] = report.detail;
  return j;
}

std::optional<std::string> check_expectation(const ProblemSpec& problem,
                                             const Json& result) {
  if (!problem.expected) return std::nullopt;
  const auto& exp = *problem.expected;

  if (exp.status) {
    if (!result.contains("status")) return "result carries no status";
    const auto got = result.at("status").get<std::string>();
    if (got != *exp.status)
      return "status mismatch: expected " + *exp.status + ", got " + got;
  }
  if (exp.point) {
    if (!result.contains("point")) return "result carries no point";
    Vector got;
    try {
      got = vector_from_json(result.at("point"));
    } catch (const InputError&) {
      return "result point is not finite";
    }
    if (got.size() != exp.point->size()) return "result point dimension mismatch";
    const double dev = (got - *exp.point).lpNorm<Eigen::Infinity>();
    if (!(dev <= exp.tolerance))
      return "point deviates from expectation by " + std::to_string(dev);
  }
  if (exp.value) {
    if (!result.contains("value")) return "result carries no value";
    if (!result.at("value").is_number())
      return "result value is not finite";
    const double dev = std::abs(result.at("value").get<double>() - *exp.value);
    if (!(dev <= exp.tolerance))
      return "value deviates from expectation by " + std::to_string(dev);
  }
  if (exp.duality_status) {
    if (!result.contains("duality") || !result.at("duality").contains("status"))
      return "result carries no duality status";
    const auto got = result.at("duality").at("status").get<std::string>();
    if (got != *exp.duality_status)
      return "duality status mismatch: expected " + *exp.duality_status + ", got " + got;
  }
  return std::nullopt;
}

}  // namespace bregcc
