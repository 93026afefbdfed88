// SPDX-License-Identifier: Apache-2.0
#include "bregcc/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Bregman circumcenter solver"};
  app.require_subcommand(1);

  std::string input, output;
  std::uint64_t seed = 0;
  double tol = 0.0;
  bool emit_plot = false;

  CLI::App* solve = app.add_subcommand("solve", "solve one problem file");
  solve->add_option("--input", input, "problem file (JSON)")->required();
  solve->add_option("--output", output, "result file to write")->required();
  CLI::Option* seed_opt =
      solve->add_option("--seed", seed, "seed for randomized restarts");
  CLI::Option* tol_opt =
      solve->add_option("--tol", tol, "verification tolerance override");
  solve->add_flag("--emit-plot", emit_plot,
                  "write Bregman ball boundary samples (2-D/3-D)");

  std::string suite_dir, suite_output;
  CLI::App* suite = app.add_subcommand("suite", "run a directory of problems");
  suite->add_option("--input", suite_dir, "directory of problem files")->required();
  suite->add_option("--output", suite_output, "aggregate report to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      bregcc::cli::Overrides overrides;
      if (seed_opt->count() > 0) overrides.seed = seed;
      if (tol_opt->count() > 0) overrides.tol = tol;
      overrides.emit_plot = emit_plot;
      return bregcc::cli::run(input, output, overrides);
    }
    return bregcc::cli::run_suite(suite_dir, suite_output);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
