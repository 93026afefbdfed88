// SPDX-License-Identifier: Apache-2.0
#include "bregcc/duality.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bregcc {
namespace {

// grad f is injective on int dom f, so distinct sites must map to distinct
// gradients. A violation here is an internal error, not bad input.
void assert_cardinality(const std::vector<Vector>& points,
                        const std::vector<Vector>& gradients) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      const double dp = (points[i] - points[j]).lpNorm<Eigen::Infinity>();
      const double dg = (gradients[i] - gradients[j]).lpNorm<Eigen::Infinity>();
      if (dp > 1e-12 && dg == 0.0)
        throw SolveError("duality: gradient map collapsed two distinct sites");
    }
}

std::vector<Vector> gradient_sites(const FunctionPtr& fn,
                                   const std::vector<Vector>& points) {
  std::vector<Vector> gradients;
  gradients.reserve(points.size());
  for (const Vector& q : points) {
    if (fn->classify(q) != Region::Interior)
      throw DomainError("duality: all sites must be in int dom f");
    gradients.push_back(fn->gradient(q));
  }
  assert_cardinality(points, gradients);
  return gradients;
}

// Worst residual of the constraints normals^T x = rhs at x.
double constraint_residual(const Matrix& normals, const Vector& rhs, const Vector& x) {
  return (normals.transpose() * x - rhs).lpNorm<Eigen::Infinity>();
}

}  // namespace

DualityReport check_pseudo_duality(const FunctionPtr& fn,
                                   const std::vector<Vector>& points) {
  const auto gradients = gradient_sites(fn, points);
  const FunctionPtr conj = fn->conjugate();

  const BackwardProblem primal = BackwardProblem::create(fn, points);
  const CcResult lhs = backward_pseudo_circumcenter(primal);

  const ForwardProblem dual = ForwardProblem::create(conj, gradients);
  const CcResult rhs_forward = forward_pseudo_circumcenter(dual);

  DualityReport report;

  // The identity intersects the backward pseudo circumcenter with int dom f,
  // so a boundary point on the left makes the comparison inapplicable.
  const bool lhs_exists = cc_in_domain(lhs);
  if (lhs_exists && lhs.domain == Region::Boundary) {
    report.lhs = lhs.set;  // the witness point
    report.rhs = rhs_forward.set;
    report.status = DualityStatus::Inapplicable;
    report.detail =
        "backward pseudo circumcenter lies on bd dom f (witness recorded); "
        "its intersection with int dom f is empty";
    return report;
  }
  if (lhs_exists) report.lhs = lhs.set;
  // A pseudo point outside dom f means the set defined by the paper is
  // empty; the report's lhs reflects the set, not the diagnostic point.

  std::optional<Vector> rhs_point;
  if (rhs_forward.set.kind == SetKind::UniquePoint) {
    // Map back to the primal side. The forward pseudo point lives in
    // int dom f*, where grad f* is defined.
    rhs_point = conj->gradient(rhs_forward.set.point);
  }
  if (rhs_point) {
    report.rhs.kind = SetKind::UniquePoint;
    report.rhs.point = *rhs_point;
  } else {
    report.rhs.kind = SetKind::Empty;
  }

  if (!lhs_exists && !rhs_point) {
    report.status = DualityStatus::Match;
    report.max_deviation = 0.0;
    report.detail = "both sides are empty";
    return report;
  }
  if (lhs_exists != bool(rhs_point)) {
    report.status = DualityStatus::Mismatch;
    report.max_deviation = inf();
    report.detail = lhs_exists ? "only the backward side produced a point"
                               : "only the conjugate side produced a point";
    return report;
  }

  report.max_deviation = (lhs.set.point - *rhs_point).lpNorm<Eigen::Infinity>();
  report.status = report.max_deviation <= kDualTol ? DualityStatus::Match
                                                   : DualityStatus::Mismatch;
  return report;
}

DualityReport check_E_duality(const FunctionPtr& fn,
                              const std::vector<Vector>& points) {
  const auto gradients = gradient_sites(fn, points);
  const FunctionPtr conj = fn->conjugate();

  const BackwardProblem primal = BackwardProblem::create(fn, points);
  const CcResult lhs = backward_E_representative(primal);

  const ForwardProblem dual_forward = ForwardProblem::create(conj, gradients);
  const ForwardEResult rhs = forward_E_representative(dual_forward);

  DualityReport report;
  report.lhs = lhs.set;
  report.rhs = rhs.dual_set;

  const bool lhs_empty = lhs.set.kind == SetKind::Empty;
  const bool rhs_empty = rhs.dual_set.kind == SetKind::Empty;
  if (lhs_empty && rhs_empty) {
    report.status = DualityStatus::Match;
    report.detail = "both linear systems are inconsistent";
    return report;
  }
  if (lhs_empty != rhs_empty) {
    report.status = DualityStatus::Mismatch;
    report.max_deviation = inf();
    report.detail = "exactly one of the two linear systems is inconsistent";
    return report;
  }

  // Constraint systems on either side.
  const Matrix primal_normals = primal.constraint_normals();
  const Matrix dual_normals = dual_forward.difference_matrix();  // same columns
  double dev = 0.0;

  // Map the forward representative of the conjugate side back and test it
  // against the backward constraints (their right-hand sides are computed
  // from f and f* values respectively, so this is a real cross-check).
  if (rhs.representative) {
    const Vector mapped = conj->gradient(*rhs.representative);
    dev = std::max(dev, constraint_residual(primal_normals, primal.betas, mapped));
  }

  // Symmetric check: the backward equidistance structure of grad f(S) under
  // f*, whose solutions map through grad f* onto the forward equidistance
  // set of S under f.
  const BackwardProblem dual_backward = BackwardProblem::create(conj, gradients);
  const CcResult dual_e = backward_E_representative(dual_backward);
  if (dual_e.set.kind != SetKind::Empty && dual_e.domain == Region::Interior) {
    const Vector mapped = conj->gradient(dual_e.set.point);
    // mapped must satisfy <grad f(mapped), q_i - q_0> = eta_i.
    const ForwardProblem primal_forward = ForwardProblem::create(fn, points);
    dev = std::max(dev,
                   constraint_residual(primal_forward.difference_matrix(),
                                       primal_forward.etas, fn->gradient(mapped)));
  }

  // Set-level probe: sampled points of the lhs flat, shifted along the null
  // basis, must satisfy the conjugate-side system and vice versa.
  std::mt19937_64 rng(20210405);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto sample = [&](const SolutionSet& set) -> Vector {
    Vector x = set.point;
    for (const Vector& dir : set.null_basis) x += u(rng) * dir;
    return x;
  };
  for (int trial = 0; trial < 3; ++trial) {
    const Vector x = sample(lhs.set);
    dev = std::max(dev, constraint_residual(dual_normals, dual_forward.etas, x));
    const Vector w = sample(rhs.dual_set);
    dev = std::max(dev, constraint_residual(primal_normals, primal.betas, w));
  }

  report.max_deviation = dev;
  report.status =
      dev <= kDualTol ? DualityStatus::Match : DualityStatus::Mismatch;
  return report;
}

std::pair<CcResult, CcResult> alternative_operators(const FunctionPtr& fn,
                                                    const std::vector<Vector>& points,
                                                    std::uint64_t seed) {
  const auto gradients = gradient_sites(fn, points);
  const FunctionPtr conj = fn->conjugate();

  // First operator: grad f* of the forward circumcenter of grad f(S) under
  // f*. The result is a backward-equidistant point of S under f.
  const ForwardProblem dual_forward = ForwardProblem::create(conj, gradients);
  CcResult first = forward_circumcenter(dual_forward, seed);
  if (first.set.kind == SetKind::UniquePoint) {
    first.set.point = conj->gradient(first.set.point);
    first.domain = fn->classify(first.set.point);
    const BackwardProblem primal = BackwardProblem::create(fn, points);
    first.equidistance_residual =
        backward_equidistance_gap(primal, first.set.point);
    if (first.equidistance_residual >
        backward_cc_tolerance(primal, first.set.point))
      first.status = CcStatus::VerificationWarning;
  }

  // Second operator: the backward pseudo circumcenter of grad f(S) under f*.
  // It lives in dom f* and is already verified in the f* geometry.
  const BackwardProblem dual_backward = BackwardProblem::create(conj, gradients);
  CcResult second = backward_pseudo_circumcenter(dual_backward);

  return {std::move(first), std::move(second)};
}

}  // namespace bregcc
