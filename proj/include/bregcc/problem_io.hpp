// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/duality.hpp"
#include "bregcc/oracle.hpp"

#include <nlohmann/json.hpp>

namespace bregcc {

using Json = nlohmann::json;  // ordered by key, which keeps output deterministic

/**
 * A parsed problem file. The operation string is one of backward_cc,
 * backward_pseudo, forward_cc, forward_pseudo, distance, project_backward,
 * project_forward, duality_check, verify. Projections take the target flat
 * from options.flat and project points[0]; verify takes the candidate from
 * options.candidate and the side from options.mode.
 */
struct ProblemSpec {
  std::string function;
  int dimension = 0;
  std::vector<Vector> points;
  std::string operation;

  // options
  double tol = kCcTolBase;
  std::uint64_t seed = 0;
  bool emit_plot = false;
  std::optional<AffineFlat> flat;
  std::optional<Vector> candidate;
  std::string mode = "backward";  // verify / duality_check side selector

  // optional expectations, used by suite runs
  struct Expectation {
    std::optional<std::string> status;
    std::optional<Vector> point;
    std::optional<double> value;
    std::optional<std::string> duality_status;
    double tolerance = 1e-8;
  };
  std::optional<Expectation> expected;
};

ProblemSpec parse_problem(const Json& j);
ProblemSpec load_problem(const std::string& path);

// Serialization helpers. Infinities have no JSON representation and are
// emitted as the string "infinity" (signed).
Json number_to_json(double v);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

std::string status_string(const CcResult& result);
std::string region_string(Region r);
std::string duality_status_string(DualityStatus s);
std::string oracle_method_string(OracleMethod m);

Json cc_result_to_json(const CcResult& result);
Json solution_set_to_json(const SolutionSet& set);
Json verification_to_json(const VerificationReport& report);
Json duality_report_to_json(const DualityReport& report);

// Pass/fail comparison of a result document against the problem's expected
// block; nothing when the expectations hold, otherwise a diagnostic.
std::optional<std::string> check_expectation(const ProblemSpec& problem,
                                             const Json& result);

}  // namespace bregcc
