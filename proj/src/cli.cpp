// SPDX-License-Identifier: Apache-2.0
#include "bregcc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace bregcc::cli {
namespace {

FunctionPtr make_problem_function(const ProblemSpec& problem) {
  return make_function(problem.function, problem.dimension);
}

// Scale-aware verification tolerance used for the pre-write round trip.
double roundtrip_tolerance(const FunctionPtr& fn, const std::vector<Vector>& sites,
                           const Vector& point, CcMode mode) {
  double dmax = 0.0;
  for (const Vector& s : sites) {
    const double d = mode == CcMode::Backward ? bregman_distance(*fn, point, s)
                                              : bregman_distance(*fn, s, point);
    if (std::isfinite(d)) dmax = std::max(dmax, d);
  }
  return kCcTolBase * (1.0 + dmax);
}

// Every unique point is re-verified through the oracle before it is written;
// a failing verification demotes the status to Warning.
void roundtrip_verify(const FunctionPtr& fn, const ProblemSpec& problem,
                      CcMode mode, Json& result) {
  if (result.at("status") != "Unique" || !result.contains("point")) return;
  const Vector point = vector_from_json(result.at("point"));
  const double tol = roundtrip_tolerance(fn, problem.points, point, mode);
  const VerificationReport report =
      verify_equidistance(fn, problem.points, point, mode, tol);
  result["verification"] = verification_to_json(report);
  if (!report.pass) {
    result["status"] = "Warning";
    result["detail"] = "pre-write verification failed; status demoted";
  }
}

// ---- plot emission ---------------------------------------------------------

std::vector<Vector> ray_directions(int dim) {
  std::vector<Vector> dirs;
  if (dim == 2) {
    constexpr int kAngles = 180;
    dirs.reserve(kAngles);
    for (int a = 0; a < kAngles; ++a) {
      const double phi = 2.0 * M_PI * a / kAngles;
      Vector u(2);
      u << std::cos(phi), std::sin(phi);
      dirs.push_back(u);
    }
  } else {
    // Fibonacci sphere; even coverage without randomness.
    constexpr int kSamples = 200;
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    dirs.reserve(kSamples);
    for (int a = 0; a < kSamples; ++a) {
      const double z = 1.0 - 2.0 * (a + 0.5) / kSamples;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * a;
      Vector u(3);
      u << rho * std::cos(phi), rho * std::sin(phi), z;
      dirs.push_back(u);
    }
  }
  return dirs;
}

// Boundary sample of the Bregman ball {x : dist(x) = r} along site + t u,
// where dist is nondecreasing from 0 at the site. Nothing when the level is
// never reached inside dom f.
std::optional<Vector> ball_boundary_sample(
    const std::function<double(const Vector&)>& dist, const Vector& site,
    const Vector& u, double r) {
  double t_lo = 0.0;
  double t_hi = 1e-3;
  bool bracketed = false;
  for (int i = 0; i < 80; ++i) {
    const double d = dist(site + t_hi * u);
    if (!std::isfinite(d) || d >= r) {
      bracketed = true;
      break;
    }
    t_lo = t_hi;
    t_hi *= 1.5;
  }
  if (!bracketed) return std::nullopt;
  for (int i = 0; i < 70; ++i) {
    const double mid = 0.5 * (t_lo + t_hi);
    const double d = dist(site + mid * u);
    if (std::isfinite(d) && d < r)
      t_lo = mid;
    else
      t_hi = mid;
  }
  const Vector x = site + t_lo * u;
  const double d = dist(x);
  // Reject rays clipped by the domain boundary before reaching the level.
  if (!std::isfinite(d) || std::abs(d - r) > 1e-6 * (1.0 + r)) return std::nullopt;
  return x;
}

void emit_plot(const FunctionPtr& fn, const ProblemSpec& problem, CcMode mode,
               const Json& result, const std::string& output_path) {
  if (problem.dimension != 2 && problem.dimension != 3) return;
  if (!result.contains("point") || result.at("status") != "Unique") return;
  const Vector center = vector_from_json(result.at("point"));

  std::ofstream out(output_path + ".plot.tsv");
  if (!out) throw InputError("cannot write plot file next to '" + output_path + "'");
  out << "# ball\tx\ty" << (problem.dimension == 3 ? "\tz" : "") << "\n";
  out.precision(17);

  const auto dirs = ray_directions(problem.dimension);
  for (size_t i = 0; i < problem.points.size(); ++i) {
    const Vector& site = problem.points[i];
    const double r = mode == CcMode::Backward
                         ? bregman_distance(*fn, center, site)
                         : bregman_distance(*fn, site, center);
    if (!std::isfinite(r) || r <= 0.0) continue;
    const auto dist = [&](const Vector& x) {
      return mode == CcMode::Backward ? bregman_distance(*fn, x, site)
                                      : bregman_distance(*fn, site, x);
    };
    for (const Vector& u : dirs) {
      const auto x = ball_boundary_sample(dist, site, u, r);
      if (!x) continue;
      out << i;
      for (int c = 0; c < x->size(); ++c) out << '\t' << (*x)[c];
      out << '\n';
    }
  }
}

// ---- dispatch --------------------------------------------------------------

Json solve_cc(const ProblemSpec& problem, const FunctionPtr& fn) {
  CcMode mode = CcMode::Backward;
  Json result;
  if (problem.operation == "backward_cc") {
    result = cc_result_to_json(
        backward_circumcenter(BackwardProblem::create(fn, problem.points)));
  } else if (problem.operation == "backward_pseudo") {
    result = cc_result_to_json(
        backward_pseudo_circumcenter(BackwardProblem::create(fn, problem.points)));
  } else if (problem.operation == "forward_cc") {
    mode = CcMode::Forward;
    result = cc_result_to_json(
        forward_circumcenter(ForwardProblem::create(fn, problem.points), problem.seed));
  } else {
    mode = CcMode::Forward;
    result = cc_result_to_json(
        forward_pseudo_circumcenter(ForwardProblem::create(fn, problem.points)));
  }
  roundtrip_verify(fn, problem, mode, result);
  return result;
}

Json solve_distance(const ProblemSpec& problem, const FunctionPtr& fn) {
  if (problem.points.size() != 2)
    throw InputError("operation 'distance' needs exactly two points");
  Json result;
  result["status"] = "Unique";
  result["value"] = number_to_json(
      bregman_distance(*fn, problem.points[0], problem.points[1]));
  return result;
}

Json solve_projection(const ProblemSpec& problem, const FunctionPtr& fn) {
  if (!problem.flat)
    throw InputError("projection operations need options.flat");
  if (problem.points.size() != 1)
    throw InputError("projection operations take exactly one point");
  if (problem.flat->base.size() != problem.dimension)
    throw InputError("options.flat dimension mismatch");
  const ProjectionResult projected =
      problem.operation == "project_backward"
          ? backward_bregman_project(*fn, *problem.flat, problem.points[0])
          : forward_bregman_project(*fn, *problem.flat, problem.points[0]);
  Json result;
  result["status"] = "Unique";
  result["point"] = vector_to_json(projected.point);
  result["solver_residual"] = number_to_json(projected.residual);
  result["iterations"] = projected.iterations;
  result["domain"] = region_string(fn->classify(projected.point));
  result["in_domain"] = true;
  return result;
}

Json solve_duality(const ProblemSpec& problem, const FunctionPtr& fn) {
  DualityReport report;
  if (problem.mode == "e" || problem.mode == "E")
    report = check_E_duality(fn, problem.points);
  else
    report = check_pseudo_duality(fn, problem.points);

  Json result;
  result["duality"] = duality_report_to_json(report);
  if (report.status == DualityStatus::Match) {
    if (report.lhs.kind == SetKind::UniquePoint) {
      result["status"] = "Unique";
      result["point"] = vector_to_json(report.lhs.point);
    } else if (report.lhs.kind == SetKind::Flat) {
      result["status"] = "Flat";
    } else {
      result["status"] = "Empty";
    }
  } else {
    result["status"] = "Warning";
  }
  return result;
}

Json solve_verify(const ProblemSpec& problem, const FunctionPtr& fn) {
  if (!problem.candidate)
    throw InputError("operation 'verify' needs options.candidate");
  if (problem.candidate->size() != problem.dimension)
    throw InputError("options.candidate dimension mismatch");
  const CcMode mode =
      problem.mode == "forward" ? CcMode::Forward : CcMode::Backward;
  const VerificationReport report =
      verify_equidistance(fn, problem.points, *problem.candidate, mode, problem.tol);
  Json result;
  result["verification"] = verification_to_json(report);
  result["status"] = report.pass ? "Unique" : "Warning";
  if (report.pass) result["point"] = vector_to_json(*problem.candidate);
  return result;
}

bool is_cc_operation(const std::string& op) {
  return op == "backward_cc" || op == "backward_pseudo" || op == "forward_cc" ||
         op == "forward_pseudo";
}

}  // namespace

SolveOutcome solve_problem(const ProblemSpec& problem) {
  SolveOutcome outcome;
  const auto started = std::chrono::steady_clock::now();

  FunctionPtr fn;
  try {
    fn = make_problem_function(problem);
  } catch (const Error& err) {
    outcome.result["status"] = "Error";
    outcome.result["detail"] = err.what();
    outcome.exit_code = 1;
    return outcome;
  }

  try {
    if (is_cc_operation(problem.operation))
      outcome.result = solve_cc(problem, fn);
    else if (problem.operation == "distance")
      outcome.result = solve_distance(problem, fn);
    else if (problem.operation == "project_backward" ||
             problem.operation == "project_forward")
      outcome.result = solve_projection(problem, fn);
    else if (problem.operation == "duality_check")
      outcome.result = solve_duality(problem, fn);
    else
      outcome.result = solve_verify(problem, fn);
  } catch (const InputError& err) {
    outcome.result["status"] = "Error";
    outcome.result["detail"] = err.what();
    outcome.exit_code = 1;
  } catch (const UnsupportedError& err) {
    outcome.result["status"] = "Error";
    outcome.result["detail"] = err.what();
    outcome.exit_code = 1;
  } catch (const Error& err) {
    // Domain violations discovered while solving and solver breakdowns.
    outcome.result["status"] = "Error";
    outcome.result["detail"] = err.what();
    outcome.exit_code = 2;
  }

  outcome.result["operation"] = problem.operation;
  outcome.result["function"] = problem.function;
  outcome.result["dimension"] = problem.dimension;
  const auto elapsed = std::chrono::steady_clock::now() - started;
  outcome.result["timing_ms"] =
      std::chrono::duration<double, std::milli>(elapsed).count();
  return outcome;
}

int run(const std::string& input_path, const std::string& output_path,
        const Overrides& overrides) {
  ProblemSpec problem;
  try {
    problem = load_problem(input_path);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  if (overrides.seed) problem.seed = *overrides.seed;
  if (overrides.tol) problem.tol = *overrides.tol;
  if (overrides.emit_plot) problem.emit_plot = true;

  SolveOutcome outcome = solve_problem(problem);

  try {
    if (problem.emit_plot && outcome.exit_code == 0 &&
        is_cc_operation(problem.operation)) {
      const CcMode mode = problem.operation.rfind("forward", 0) == 0
                              ? CcMode::Forward
                              : CcMode::Backward;
      emit_plot(make_problem_function(problem), problem, mode, outcome.result,
                output_path);
    }
    std::ofstream out(output_path);
    if (!out) throw InputError("cannot write result file '" + output_path + "'");
    out << outcome.result.dump(2) << "\n";
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }

  if (outcome.exit_code != 0)
    std::cerr << "error: " << outcome.result.value("detail", "failed") << "\n";
  return outcome.exit_code;
}

int run_suite(const std::string& directory, const std::string& output_path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  try {
    for (const auto& entry : fs::directory_iterator(directory))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
  } catch (const fs::filesystem_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no problem files in '" << directory << "'\n";
    return 1;
  }

  Json cases = Json::array();
  int input_errors = 0, failures = 0, passed = 0;
  for (const auto& file : files) {
    Json entry;
    entry["file"] = file.filename().string();
    try {
      const ProblemSpec problem = load_problem(file.string());
      const SolveOutcome outcome = solve_problem(problem);
      entry["result"] = outcome.result;
      if (outcome.exit_code == 1) {
        entry["outcome"] = "input_error";
        ++input_errors;
      } else if (outcome.exit_code != 0) {
        entry["outcome"] = "solver_failure";
        ++failures;
      } else if (const auto mismatch = check_expectation(problem, outcome.result)) {
        entry["outcome"] = "expectation_failed";
        entry["message"] = *mismatch;
        ++failures;
      } else {
        entry["outcome"] = problem.expected ? "pass" : "computed";
        ++passed;
      }
    } catch (const InputError& err) {
      entry["outcome"] = "input_error";
      entry["message"] = err.what();
      ++input_errors;
    }
    cases.push_back(std::move(entry));
  }

  Json report;
  report["cases"] = std::move(cases);
  report["summary"] = {{"total", files.size()},
                       {"passed", passed},
                       {"failed", failures},
                       {"input_errors", input_errors}};

  std::ofstream out(output_path);
  if (!out) {
    std::cerr << "error: cannot write report file '" << output_path << "'\n";
    return 1;
  }
  out << report.dump(2) << "\n";

  if (input_errors > 0) return 1;
  if (failures > 0) return 2;
  return 0;
}

}  // namespace bregcc::cli
