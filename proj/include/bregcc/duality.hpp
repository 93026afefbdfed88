// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/backward.hpp"
#include "bregcc/forward.hpp"

namespace bregcc {

enum class DualityStatus { Match, Mismatch, Inapplicable };

/**
 * Outcome of comparing a primal-side solution set against the conjugate-side
 * route. Match means both sides agree pointwise to dual_tol (two empty sides
 * agree vacuously). Inapplicable carries an explicit witness in detail: a
 * hypothesis such as interiority failed at a computed point, so the two
 * routes are not comparable.
 */
struct DualityReport {
  SolutionSet lhs;
  SolutionSet rhs;
  double max_deviation = 0.0;
  DualityStatus status = DualityStatus::Match;
  std::string detail;
};

/**
 * Pseudo-circumcenter duality: lhs is the backward pseudo circumcenter of S
 * under f, rhs is grad f* applied to the forward pseudo circumcenter of
 * grad f(S) under f*. The two solve the same Gram system through different
 * arithmetic, so agreement is a genuine numerical cross-check. A boundary
 * lhs point makes the comparison Inapplicable (the identity intersects the
 * left side with int dom f).
 */
DualityReport check_pseudo_duality(const FunctionPtr& fn,
                                   const std::vector<Vector>& points);

/**
 * Equidistance-set duality: the backward equidistance flat of S under f
 * against the dual-space system of grad f(S) under f*. Representatives are
 * mapped across and checked against the other side's linear constraints;
 * set-level equality is probed on sampled points of the flats.
 */
DualityReport check_E_duality(const FunctionPtr& fn,
                              const std::vector<Vector>& points);

/**
 * The two mixed operators defined by their conjugate-side reductions:
 * first = grad f* applied to the forward circumcenter of grad f(S) under f*
 * (a backward-equidistant point of S under f), second = the backward pseudo
 * circumcenter of grad f(S) under f* (a point living in dom f*, verified in
 * the f* geometry).
 */
std::pair<CcResult, CcResult> alternative_operators(const FunctionPtr& fn,
                                                    const std::vector<Vector>& points,
                                                    std::uint64_t seed = 0);

}  // namespace bregcc
