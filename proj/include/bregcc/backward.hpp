// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/bregman.hpp"

namespace bregcc {

/**
 * Backward circumcenter instance: sites q_0..q_m in int dom f. Seeking
 * points x with D_f(x, q_0) = ... = D_f(x, q_m), which is the affine system
 * <grad f(q_i) - grad f(q_0), x> = beta_i restricted to dom f.
 */
struct BackwardProblem {
  FunctionPtr fn;
  std::vector<Vector> points;     // q_0..q_m
  std::vector<Vector> gradients;  // grad f(q_i)
  Vector betas;                   // beta_1..beta_m
  AffineFlat point_hull;          // aff(S)
  AffineFlat gradient_hull;       // aff(grad f(S))

  static BackwardProblem create(FunctionPtr fn, std::vector<Vector> points);

  int dimension() const { return static_cast<int>(points[0].size()); }
  int site_count() const { return static_cast<int>(points.size()); }

  // Equidistance constraint normals grad f(q_i) - grad f(q_0), one column per i.
  Matrix constraint_normals() const;
};

// Worst equidistance gap of x against the sites, measured per the distance
// definition. Infinite when x is outside dom f.
double backward_equidistance_gap(const BackwardProblem& problem, const Vector& x);

// Scale-aware tolerance for accepting x as equidistant.
double backward_cc_tolerance(const BackwardProblem& problem, const Vector& x);

/**
 * The full backward equidistance set as an affine solution set over ambient
 * space: Empty, UniquePoint, or Flat with minimal-norm particular and an
 * orthonormal null basis. The particular point's dom-f membership is
 * reported in the result but the set itself is not shrunk to dom f.
 */
CcResult backward_E_representative(const BackwardProblem& problem);

/**
 * Backward circumcenter: the equidistance system restricted to aff(S).
 * UniquePoint results are post-verified for equidistance; a representative
 * outside dom f is returned with status OutsideDomain (the set defined by
 * intersecting with dom f is then empty).
 */
CcResult backward_circumcenter(const BackwardProblem& problem);

/**
 * Backward pseudo circumcenter: the equidistance system restricted to
 * aff(grad f(S)). Empty or UniquePoint, never Flat. Uses the explicit
 * Gram-inverse formula when the gradients are affinely independent and
 * cross-checks against the Euclidean-projection route when an equidistant
 * point exists.
 */
CcResult backward_pseudo_circumcenter(const BackwardProblem& problem);

// Euclidean projection of an equidistance-set point onto aff(grad f(S)); by
// the projection characterization this equals the pseudo circumcenter.
// Returns nothing when the equidistance set is empty.
std::optional<Vector> backward_pseudo_via_projection(const BackwardProblem& problem);

/**
 * Forward-projection route into the backward circumcenter set: the forward
 * Bregman projection of an equidistant interior point onto aff(S). Requires
 * fn.allows_forward_projections(). The result is post-verified; a failed
 * verification downgrades the status to VerificationWarning.
 */
CcResult backward_cc_via_forward_projection(const BackwardProblem& problem,
                                            const Vector& e_point);

}  // namespace bregcc
