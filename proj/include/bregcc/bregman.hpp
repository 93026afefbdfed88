// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/legendre.hpp"
#include "bregcc/linalg.hpp"

#include <optional>

namespace bregcc {

/**
 * D_f(x, y) = f(x) - f(y) - <grad f(y), x - y> for y in int dom f, and
 * +infinity when y is outside the interior (including boundary points) or
 * x is outside dom f. Never negative, zero exactly on the diagonal.
 */
double bregman_distance(const LegendreFunction& f, const Vector& x, const Vector& y);

// Same value computed on the conjugate side: D_{f*}(grad f(y), grad f(x)).
// Both x and y must be interior.
double bregman_distance_dual_pair(const LegendreFunction& f, const Vector& x,
                                  const Vector& y);

struct ProjectionResult {
  Vector point;
  double residual = 0.0;
  int iterations = 0;
};

/**
 * Backward Bregman projection of y onto flat: argmin_{z in flat} D_f(z, y).
 * The optimality system is Q^T (grad f(z) - grad f(y)) = 0 for an
 * orthonormal basis Q of the flat directions. y must be interior; the flat
 * must meet int dom f (the solve fails otherwise). interior_hint, when
 * given, seeds the iteration and must be an interior point of the flat.
 */
ProjectionResult backward_bregman_project(const LegendreFunction& f,
                                          const AffineFlat& flat, const Vector& y,
                                          std::optional<Vector> interior_hint = {});

/**
 * Forward Bregman projection of y onto flat: argmin_{z in flat} D_f(y, z),
 * optimality Q^T (grad^2 f(z) (y - z)) = 0. Requires
 * f.allows_forward_projections(); throws UnsupportedError otherwise.
 */
ProjectionResult forward_bregman_project(const LegendreFunction& f,
                                         const AffineFlat& flat, const Vector& y,
                                         std::optional<Vector> interior_hint = {});

namespace detail {

/**
 * Damped Newton on c in R^k for residual(z), z = base + Q c, constrained to
 * keep z in int dom f. Shared by the projection solvers and the forward
 * circumcenter. Step acceptance is a relaxed Armijo decrease on |residual|_2
 * with feasibility enforced by step halving (at most kMaxHalvings).
 * Terminates when |residual|_inf <= tol; throws SolveError on stall.
 */
struct NewtonProblem {
  std::function<Vector(const Vector&)> residual;   // of z
  std::function<Matrix(const Vector&)> jacobian;   // d residual / d c, k x k
  std::function<bool(const Vector&)> feasible;     // z in int dom f
};

struct NewtonOutcome {
  Vector c;
  Vector z;
  double residual_norm = 0.0;
  int iterations = 0;
};

NewtonOutcome damped_newton(const NewtonProblem& problem, const Vector& base,
                            const Matrix& Q, Vector c0, double tol = kNewtonTol,
                            int max_iter = kNewtonMaxIter);

}  // namespace detail

}  // namespace bregcc
