// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/legendre.hpp"
#include "bregcc/linalg.hpp"

#include <optional>

namespace bregcc {

enum class OracleMethod { GridSearch, ScalarRootFind, ConstraintResidual };
enum class CcMode { Backward, Forward };

/**
 * Brute-force verification verdict. Independent of the solver layer by
 * construction: only bregman_distance evaluations, no linear or Newton
 * solves.
 */
struct VerificationReport {
  std::string claim;
  OracleMethod method = OracleMethod::ConstraintResidual;
  double worst_residual = 0.0;
  bool pass = false;
  std::string detail;
};

/**
 * Check a candidate point for equidistance against the sites, straight from
 * the distance definition: all pairwise gaps |D_i - D_j|, with
 * D_i = D_f(candidate, q_i) in Backward mode and D_f(p_i, candidate) in
 * Forward mode. A candidate outside the required domain fails with a
 * reason, never with a fabricated residual.
 */
VerificationReport verify_equidistance(const FunctionPtr& fn,
                                       const std::vector<Vector>& sites,
                                       const Vector& candidate, CcMode mode,
                                       double tol);

/**
 * Multi-level grid search over the flat's coordinates (flat dimension <= 3)
 * minimizing the worst pairwise distance gap. 21 nodes per axis, `levels`
 * refinements shrinking the radius by 10 around the incumbent. Returns the
 * best point, or nothing when the best gap stays above 1e-3 (no equidistant
 * point on the flat at oracle resolution).
 */
std::optional<Vector> grid_refine_search(const FunctionPtr& fn,
                                         const std::vector<Vector>& sites,
                                         const AffineFlat& flat, CcMode mode,
                                         double grid_radius = 4.0, int levels = 5);

// Plain bisection for g(t) = 0 on [lo, hi]; nothing when the bracket shows
// no sign change. Used to re-derive one-dimensional reference values.
std::optional<double> scalar_root_oracle(const std::function<double(double)>& g,
                                         double lo, double hi, double tol = 1e-13);

}  // namespace bregcc
