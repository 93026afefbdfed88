// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/bregman.hpp"

namespace bregcc {

/**
 * Forward circumcenter instance: sites p_0..p_m in dom f (boundary points
 * allowed). Seeking y in int dom f with D_f(p_0, y) = ... = D_f(p_m, y),
 * equivalently <grad f(y), p_i - p_0> = eta_i with eta_i = f(p_i) - f(p_0).
 */
struct ForwardProblem {
  FunctionPtr fn;
  std::vector<Vector> points;  // p_0..p_m
  Vector etas;                 // eta_1..eta_m
  AffineFlat point_hull;       // aff(S)

  static ForwardProblem create(FunctionPtr fn, std::vector<Vector> points);

  int dimension() const { return static_cast<int>(points[0].size()); }
  int site_count() const { return static_cast<int>(points.size()); }

  // Difference columns p_i - p_0.
  Matrix difference_matrix() const;
};

// Worst forward equidistance gap of y (argument order reversed relative to
// the backward case). Infinite when y is not interior.
double forward_equidistance_gap(const ForwardProblem& problem, const Vector& y);
double forward_cc_tolerance(const ForwardProblem& problem, const Vector& y);

/**
 * The forward equidistance structure in dual coordinates: the solution set
 * of <w, p_i - p_0> = eta_i over the whole dual space, plus a primal
 * representative grad f*(w) when the particular solution w is in
 * int dom f*. An inconsistent system certifies that the forward
 * equidistance set is empty.
 */
struct ForwardEResult {
  SolutionSet dual_set;                  // in w coordinates
  std::optional<Vector> representative;  // grad f*(w) when available
  CcStatus status = CcStatus::Ok;
  std::string detail;
};

ForwardEResult forward_E_representative(const ForwardProblem& problem);

/**
 * Forward circumcenter: damped Newton on the hull coordinates alpha with
 * residual Phi_i(alpha) = <grad f(p(alpha)), p_i - p_0> - eta_i. Restarts:
 * alpha = 0, the energy-case linear solve, then 8 seeded perturbations in
 * [-0.5, 0.5]^m. An inconsistent dual w-system certifies Empty before any
 * Newton run; Newton divergence on all restarts yields Empty with status
 * NumericalNonexistence and the best residual seen (not a proof).
 */
CcResult forward_circumcenter(const ForwardProblem& problem, std::uint64_t seed = 0);

/**
 * Forward pseudo circumcenter: solve the w-system restricted to aff(S)
 * (explicit Gram path when the sites are affinely independent), then map
 * through grad f*. A solution outside int dom f* gives Empty with status
 * NoInteriorRepresentative. Cross-checked against the projection route
 * grad f*(P_aff(S)(w)) when the full w-system is solvable.
 */
CcResult forward_pseudo_circumcenter(const ForwardProblem& problem);

// Projection route for the pseudo circumcenter: Euclidean projection of a
// dual equidistance solution onto aff(S), mapped through grad f*. Returns
// nothing when the w-system is inconsistent or the projection leaves
// int dom f*.
std::optional<Vector> forward_pseudo_via_projection(const ForwardProblem& problem);

}  // namespace bregcc
