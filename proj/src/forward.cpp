// SPDX-License-Identifier: Apache-2.0
#include "bregcc/forward.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

namespace bregcc {

ForwardProblem ForwardProblem::create(FunctionPtr fn, std::vector<Vector> points) {
  if (!fn) throw InputError("ForwardProblem: null function");
  if (points.empty()) throw InputError("ForwardProblem: need at least one point");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != fn->dimension())
      throw InputError("ForwardProblem: point " + std::to_string(i) +
                       " has wrong dimension");
    if (fn->classify(points[i]) == Region::Outside)
      throw DomainError("ForwardProblem: point " + std::to_string(i) +
                        " is outside dom f");
  }

  ForwardProblem p;
  p.fn = std::move(fn);
  p.points = std::move(points);
  const int m = static_cast<int>(p.points.size()) - 1;
  p.etas.resize(m);
  const double base_value = p.fn->value(p.points[0]);
  for (int i = 0; i < m; ++i)
    p.etas[i] = compensated_sum({p.fn->value(p.points[i + 1]), -base_value});
  p.point_hull = AffineFlat::through_points(p.points);
  return p;
}

Matrix ForwardProblem::difference_matrix() const {
  const int m = site_count() - 1;
  Matrix D(dimension(), m);
  for (int i = 0; i < m; ++i) D.col(i) = points[i + 1] - points[0];
  return D;
}

double forward_equidistance_gap(const ForwardProblem& problem, const Vector& y) {
  const double d0 = bregman_distance(*problem.fn, problem.points[0], y);
  if (!std::isfinite(d0)) return inf();
  double gap = 0.0;
  for (int i = 1; i < problem.site_count(); ++i) {
    const double di = bregman_distance(*problem.fn, problem.points[i], y);
    if (!std::isfinite(di)) return inf();
    gap = std::max(gap, std::abs(di - d0));
  }
  return gap;
}

double forward_cc_tolerance(const ForwardProblem& problem, const Vector& y) {
  double dmax = 0.0;
  for (const Vector& p : problem.points)
    dmax = std::max(dmax, bregman_distance(*problem.fn, p, y));
  if (!std::isfinite(dmax)) return kCcTolBase;
  return kCcTolBase * (1.0 + dmax);
}

ForwardEResult forward_E_representative(const ForwardProblem& problem) {
  ForwardEResult out;
  out.dual_set =
      solve_affine_constraints(AffineFlat::full_space(problem.dimension()),
                               problem.difference_matrix(), problem.etas);
  if (out.dual_set.kind == SetKind::Empty) {
    out.detail = "the dual constraint system is inconsistent; the forward "
                 "equidistance set is empty";
    return out;
  }
  if (problem.fn->classify_dual(out.dual_set.point) == Region::Interior) {
    out.representative = problem.fn->conjugate_gradient(out.dual_set.point);
  } else {
    out.status = CcStatus::NoInteriorRepresentative;
    out.detail = "particular dual solution lies outside int dom f*; no primal "
                 "representative at this point";
  }
  return out;
}

namespace {

// alpha coordinates of the site mean; a safe interior anchor when at least
// one site is interior (dom f is convex).
Vector mean_alpha(const ForwardProblem& problem) {
  const int m = problem.site_count() - 1;
  return Vector::Constant(m, 1.0 / (m + 1.0));
}

bool feasible_point(const ForwardProblem& problem, const Vector& z) {
  return problem.fn->classify(z) == Region::Interior;
}

// Pull alpha toward the anchor until p(alpha) is interior.
std::optional<Vector> pull_alpha(const ForwardProblem& problem, const Matrix& D,
                                 Vector alpha, const Vector& anchor) {
  for (int i = 0; i < kMaxHalvings; ++i) {
    if (feasible_point(problem, problem.points[0] + D * alpha)) return alpha;
    alpha = 0.5 * (alpha + anchor);
  }
  return std::nullopt;
}

}  // namespace

CcResult forward_circumcenter(const ForwardProblem& problem, std::uint64_t seed) {
  CcResult result;
  const int m = problem.site_count() - 1;

  // A certified emptiness check first: if no dual vector w satisfies
  // <w, p_i - p_0> = eta_i, no interior point can either.
  const ForwardEResult e = forward_E_representative(problem);
  if (e.dual_set.kind == SetKind::Empty) {
    result.set.kind = SetKind::Empty;
    result.detail = e.detail;
    return result;
  }

  if (m == 0) {
    // No constraints: the circumcenter set is aff(S) cap int dom f = {p_0}.
    if (problem.fn->classify(problem.points[0]) != Region::Interior) {
      result.set.kind = SetKind::Empty;
      result.detail = "the single site is not interior";
      return result;
    }
    result.set.kind = SetKind::UniquePoint;
    result.set.point = problem.points[0];
    result.domain = Region::Interior;
    result.equidistance_residual = 0.0;
    return result;
  }

  const Matrix D = problem.difference_matrix();
  const Vector anchor = mean_alpha(problem);

  detail::NewtonProblem newton;
  newton.feasible = [&](const Vector& z) { return feasible_point(problem, z); };
  newton.residual = [&](const Vector& z) -> Vector {
    return D.transpose() * problem.fn->gradient(z) - problem.etas;
  };
  newton.jacobian = [&](const Vector& z) -> Matrix {
    return D.transpose() * problem.fn->hessian_diagonal(z).asDiagonal() * D;
  };

  // Restart schedule: alpha = 0, the energy-case linear solve, then seeded
  // perturbations.
  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(m));
  {
    const SolutionSet energy_case =
        solve_affine_constraints(problem.point_hull, D, problem.etas);
    if (energy_case.kind != SetKind::Empty) {
      const Vector rel = energy_case.point - problem.points[0];
      starts.push_back(D.colPivHouseholderQr().solve(rel));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-0.5, 0.5);
  for (int k = 0; k < 8; ++k) {
    Vector alpha(m);
    for (int j = 0; j < m; ++j) alpha[j] = box(rng);
    starts.push_back(alpha);
  }

  double best_residual = inf();
  std::string last_error;
  for (const Vector& start : starts) {
    const auto alpha0 = pull_alpha(problem, D, start, anchor);
    if (!alpha0) continue;
    try {
      const auto outcome =
          detail::damped_newton(newton, problem.points[0], D, *alpha0);
      result.set.kind = SetKind::UniquePoint;
      result.set.point = outcome.z;
      result.domain = Region::Interior;
      result.solver_residual = outcome.residual_norm;
      result.equidistance_residual = forward_equidistance_gap(problem, outcome.z);
      if (result.equidistance_residual >
          forward_cc_tolerance(problem, outcome.z)) {
        result.status = CcStatus::VerificationWarning;
        result.detail = "equidistance verification exceeded tolerance";
      }
      return result;
    } catch (const SolveError& err) {
      last_error = err.what();
      const Vector z = problem.points[0] + D * *alpha0;
      if (feasible_point(problem, z))
        best_residual = std::min(best_residual, newton.residual(z).norm());
    }
  }

  result.set.kind = SetKind::Empty;
  result.status = CcStatus::NumericalNonexistence;
  result.solver_residual = best_residual;
  result.detail = "no restart converged (" + last_error +
                  "); emptiness is numerical, not certified";
  return result;
}

std::optional<Vector> forward_pseudo_via_projection(const ForwardProblem& problem) {
  const ForwardEResult e = forward_E_representative(problem);
  if (e.dual_set.kind == SetKind::Empty) return std::nullopt;
  const Vector w = euclid_project(problem.point_hull, e.dual_set.point);
  if (problem.fn->classify_dual(w) != Region::Interior) return std::nullopt;
  return problem.fn->conjugate_gradient(w);
}

CcResult forward_pseudo_circumcenter(const ForwardProblem& problem) {
  CcResult result;
  const Matrix D = problem.difference_matrix();

  SolutionSet dual;
  if (problem.site_count() == 1 || affinely_independent(problem.points)) {
    Vector lambda(problem.etas.size());
    for (int i = 0; i < lambda.size(); ++i)
      lambda[i] = problem.etas[i] - problem.points[0].dot(D.col(i));
    dual.kind = SetKind::UniquePoint;
    dual.point = gram_system_point(problem.points, lambda);
  } else {
    dual = solve_affine_constraints(problem.point_hull, D, problem.etas);
    if (dual.kind == SetKind::Flat)
      throw SolveError(
          "forward_pseudo_circumcenter: flat solution set contradicts the "
          "singleton property");
  }
  if (dual.kind == SetKind::Empty) {
    result.set.kind = SetKind::Empty;
    result.detail = "no dual solution on aff(S)";
    return result;
  }

  const Vector& w = dual.point;
  if (problem.fn->classify_dual(w) != Region::Interior) {
    result.set.kind = SetKind::Empty;
    result.status = CcStatus::NoInteriorRepresentative;
    result.detail = "dual solution w* lies outside int dom f*; the pseudo "
                    "circumcenter set is empty";
    return result;
  }

  result.set.kind = SetKind::UniquePoint;
  result.set.point = problem.fn->conjugate_gradient(w);
  result.domain = problem.fn->classify(result.set.point);
  result.equidistance_residual =
      forward_equidistance_gap(problem, result.set.point);

  // Projection route must land on the same point.
  if (const auto projected = forward_pseudo_via_projection(problem)) {
    const double dev = (*projected - result.set.point).lpNorm<Eigen::Infinity>();
    const double scale = 1.0 + result.set.point.lpNorm<Eigen::Infinity>();
    if (dev > 1e-8 * scale) {
      result.status = CcStatus::VerificationWarning;
      result.detail = "projection route deviates from the Gram route by " +
                      std::to_string(dev);
    }
  }
  return result;
}

}  // namespace bregcc
