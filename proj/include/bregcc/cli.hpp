// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/problem_io.hpp"

namespace bregcc::cli {

// Command-line overrides layered on top of the problem file's options.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool emit_plot = false;
};

/**
 * Solve one problem file and write the result document to output_path.
 * Exit codes: 0 = computed (an Empty or Warning result is still computed),
 * 1 = input error, 2 = solver failure. With plot emission enabled (option
 * or override) and a 2-D/3-D unique point, Bregman ball boundary samples go
 * to output_path + ".plot.tsv".
 */
int run(const std::string& input_path, const std::string& output_path,
        const Overrides& overrides = {});

/**
 * Run every *.json problem in the directory (alphabetical), check embedded
 * expectations, and write an aggregate report. Exit codes: 0 = all cases
 * computed and matched their expectations, 1 = input errors (including an
 * empty directory), 2 = expectation or solver failures.
 */
int run_suite(const std::string& directory, const std::string& output_path);

// Solve a parsed problem. Used by run/run_suite and the test harness.
struct SolveOutcome {
  Json result;
  int exit_code = 0;
};
SolveOutcome solve_problem(const ProblemSpec& problem);

}  // namespace bregcc::cli
