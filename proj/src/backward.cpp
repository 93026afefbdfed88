// SPDX-License-Identifier: Apache-2.0
#include "bregcc/backward.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bregcc {

BackwardProblem BackwardProblem::create(FunctionPtr fn, std::vector<Vector> points) {
  if (!fn) throw InputError("BackwardProblem: null function");
  if (points.empty()) throw InputError("BackwardProblem: need at least one point");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != fn->dimension())
      throw InputError("BackwardProblem: point " + std::to_string(i) +
                       " has wrong dimension");
    if (fn->classify(points[i]) != Region::Interior)
      throw DomainError("BackwardProblem: point " + std::to_string(i) +
                        " is not in the domain interior");
  }

  BackwardProblem p;
  p.fn = std::move(fn);
  p.points = std::move(points);
  p.gradients.reserve(p.points.size());
  for (const Vector& q : p.points) p.gradients.push_back(p.fn->gradient(q));

  const int m = static_cast<int>(p.points.size()) - 1;
  p.betas.resize(m);
  const double base_inner = p.gradients[0].dot(p.points[0]);
  const double base_value = p.fn->value(p.points[0]);
  for (int i = 0; i < m; ++i) {
    p.betas[i] = compensated_sum({p.gradients[i + 1].dot(p.points[i + 1]),
                                  -p.fn->value(p.points[i + 1]), -base_inner,
                                  base_value});
  }
  p.point_hull = AffineFlat::through_points(p.points);
  p.gradient_hull = AffineFlat::through_points(p.gradients);
  return p;
}

Matrix BackwardProblem::constraint_normals() const {
  const int m = site_count() - 1;
  Matrix N(dimension(), m);
  for (int i = 0; i < m; ++i) N.col(i) = gradients[i + 1] - gradients[0];
  return N;
}

double backward_equidistance_gap(const BackwardProblem& problem, const Vector& x) {
  const double d0 = bregman_distance(*problem.fn, x, problem.points[0]);
  if (!std::isfinite(d0)) return inf();
  double gap = 0.0;
  for (int i = 1; i < problem.site_count(); ++i) {
    const double di = bregman_distance(*problem.fn, x, problem.points[i]);
    if (!std::isfinite(di)) return inf();
    gap = std::max(gap, std::abs(di - d0));
  }
  return gap;
}

double backward_cc_tolerance(const BackwardProblem& problem, const Vector& x) {
  double dmax = 0.0;
  for (const Vector& q : problem.points)
    dmax = std::max(dmax, bregman_distance(*problem.fn, x, q));
  if (!std::isfinite(dmax)) return kCcTolBase;
  return kCcTolBase * (1.0 + dmax);
}

namespace {

// Shared postprocessing: classify the representative against dom f, verify
// equidistance of in-domain unique points, attach diagnostics.
CcResult finish(const BackwardProblem& problem, SolutionSet set) {
  CcResult result;
  result.set = std::move(set);
  if (result.set.kind == SetKind::Empty) {
    result.domain = Region::Outside;
    return result;
  }
  result.domain = problem.fn->classify(result.set.point);
  if (result.domain == Region::Outside) {
    result.status = CcStatus::OutsideDomain;
    result.detail =
        result.set.kind == SetKind::UniquePoint
            ? "solution of the equidistance system lies outside dom f; the "
              "circumcenter set is empty (the point is kept for diagnostics)"
            : "the minimal-norm representative of the solution flat lies "
              "outside dom f; the flat itself is reported unfiltered";
    return result;
  }
  result.equidistance_residual = backward_equidistance_gap(problem, result.set.point);
  if (result.set.kind == SetKind::UniquePoint &&
      result.equidistance_residual > backward_cc_tolerance(problem, result.set.point)) {
    result.status = CcStatus::VerificationWarning;
    result.detail = "equidistance verification exceeded tolerance";
  }
  return result;
}

}  // namespace

CcResult backward_E_representative(const BackwardProblem& problem) {
  const SolutionSet set =
      solve_affine_constraints(AffineFlat::full_space(problem.dimension()),
                               problem.constraint_normals(), problem.betas);
  return finish(problem, set);
}

CcResult backward_circumcenter(const BackwardProblem& problem) {
  const SolutionSet set = solve_affine_constraints(
      problem.point_hull, problem.constraint_normals(), problem.betas);
  return finish(problem, set);
}

std::optional<Vector> backward_pseudo_via_projection(const BackwardProblem& problem) {
  const CcResult e = backward_E_representative(problem);
  if (e.set.kind == SetKind::Empty) return std::nullopt;
  return euclid_project(problem.gradient_hull, e.set.point);
}

CcResult backward_pseudo_circumcenter(const BackwardProblem& problem) {
  const Matrix normals = problem.constraint_normals();
  SolutionSet set;
  if (problem.site_count() == 1 || affinely_independent(problem.gradients)) {
    // Explicit Gram path: < x - g_0, g_i - g_0 > = beta_i - <g_0, g_i - g_0>.
    Vector lambda(problem.betas.size());
    for (int i = 0; i < lambda.size(); ++i)
      lambda[i] = problem.betas[i] - problem.gradients[0].dot(normals.col(i));
    set.kind = SetKind::UniquePoint;
    set.point = gram_system_point(problem.gradients, lambda);
  } else {
    set = solve_affine_constraints(problem.gradient_hull, normals, problem.betas);
    if (set.kind == SetKind::Flat)
      throw SolveError(
          "backward_pseudo_circumcenter: flat solution set contradicts the "
          "singleton property");
  }

  CcResult result = finish(problem, std::move(set));
  if (result.set.kind == SetKind::UniquePoint) {
    // Projection route: the Euclidean projection of any equidistant point
    // onto aff(grad f(S)) is the same point.
    if (const auto projected = backward_pseudo_via_projection(problem)) {
      const double dev = (*projected - result.set.point).lpNorm<Eigen::Infinity>();
      const double scale = 1.0 + result.set.point.lpNorm<Eigen::Infinity>();
      if (dev > 1e-9 * scale && result.status == CcStatus::Ok) {
        result.status = CcStatus::VerificationWarning;
        result.detail = "projection route deviates from the linear-system route by " +
                        std::to_string(dev);
      }
    }
  }
  return result;
}

CcResult backward_cc_via_forward_projection(const BackwardProblem& problem,
                                            const Vector& e_point) {
  if (!problem.fn->allows_forward_projections())
    throw UnsupportedError("backward_cc_via_forward_projection: '" +
                           problem.fn->name() + "' does not allow forward projections");
  if (problem.fn->classify(e_point) != Region::Interior)
    throw DomainError("backward_cc_via_forward_projection: e_point must be interior");
  const double e_gap = backward_equidistance_gap(problem, e_point);
  if (e_gap > backward_cc_tolerance(problem, e_point))
    throw InputError("backward_cc_via_forward_projection: e_point is not equidistant");

  const ProjectionResult projected = forward_bregman_project(
      *problem.fn, problem.point_hull, e_point, problem.points[0]);

  CcResult result;
  result.set.kind = SetKind::UniquePoint;
  result.set.point = projected.point;
  result.domain = problem.fn->classify(projected.point);
  result.solver_residual = projected.residual;
  result.equidistance_residual = backward_equidistance_gap(problem, projected.point);
  if (result.equidistance_residual >
      backward_cc_tolerance(problem, projected.point)) {
    result.status = CcStatus::VerificationWarning;
    result.detail = "projected point failed the equidistance check";
  }
  return result;
}

}  // namespace bregcc
