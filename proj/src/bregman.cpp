// SPDX-License-Identifier: Apache-2.0
#include "bregcc/bregman.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace bregcc {

double bregman_distance(const LegendreFunction& f, const Vector& x, const Vector& y) {
  if (f.classify(y) != Region::Interior) return inf();
  const double fx = f.value(x);
  if (!std::isfinite(fx)) return inf();
  const double d = fx - f.value(y) - f.gradient(y).dot(x - y);
  // Clamp the tiny negative values rounding can produce.
  return d < 0.0 ? 0.0 : d;
}

double bregman_distance_dual_pair(const LegendreFunction& f, const Vector& x,
                                  const Vector& y) {
  if (f.classify(x) != Region::Interior || f.classify(y) != Region::Interior)
    throw DomainError("bregman_distance_dual_pair: both points must be interior");
  const auto conj = f.conjugate();
  return bregman_distance(*conj, f.gradient(y), f.gradient(x));
}

namespace detail {

NewtonOutcome damped_newton(const NewtonProblem& problem, const Vector& base,
                            const Matrix& Q, Vector c0, double tol, int max_iter) {
  const auto point_of = [&](const Vector& c) -> Vector { return base + Q * c; };

  Vector c = std::move(c0);
  Vector z = point_of(c);
  if (!problem.feasible(z))
    throw SolveError("damped_newton: start point is not interior");
  Vector r = problem.residual(z);
  double rnorm = r.norm();

  NewtonOutcome out;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (r.lpNorm<Eigen::Infinity>() <= tol) {
      out.c = c;
      out.z = z;
      out.residual_norm = r.lpNorm<Eigen::Infinity>();
      out.iterations = iter;
      return out;
    }
    const Matrix J = problem.jacobian(z);
    // Minimal-norm Newton step; COD handles the rank-deficient Jacobians
    // that show up when the iterate drifts toward the domain boundary.
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(J);
    Vector dc = cod.solve(-r);
    if (!dc.allFinite()) throw SolveError("damped_newton: non-finite step");

    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings; ++h) {
      const Vector c_try = c + t * dc;
      const Vector z_try = point_of(c_try);
      if (problem.feasible(z_try)) {
        const Vector r_try = problem.residual(z_try);
        if (r_try.norm() <= (1.0 - 1e-4 * t) * rnorm || r_try.lpNorm<Eigen::Infinity>() <= tol) {
          c = c_try;
          z = z_try;
          r = r_try;
          rnorm = r.norm();
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted)
      throw SolveError("damped_newton: no acceptable step (residual " +
                       std::to_string(rnorm) + ")");
  }
  if (r.lpNorm<Eigen::Infinity>() <= tol) {
    out.c = c;
    out.z = z;
    out.residual_norm = r.lpNorm<Eigen::Infinity>();
    out.iterations = max_iter;
    return out;
  }
  throw SolveError("damped_newton: no convergence in " + std::to_string(max_iter) +
                   " iterations (residual " + std::to_string(rnorm) + ")");
}

}  // namespace detail

namespace {

// Pull z toward anchor by repeated halving until it is interior.
Vector pull_to_interior(const LegendreFunction& f, Vector z, const Vector& anchor) {
  for (int i = 0; i < kMaxHalvings; ++i) {
    if (f.classify(z) == Region::Interior) return z;
    z = 0.5 * (z + anchor);
  }
  throw SolveError("could not pull the start point into the domain interior");
}

Vector projection_start(const LegendreFunction& f, const AffineFlat& flat,
                        const Matrix& Q, const Vector& y,
                        const std::optional<Vector>& interior_hint) {
  if (interior_hint) {
    if (f.classify(*interior_hint) != Region::Interior)
      throw InputError("projection: interior_hint is not interior");
    return Q.transpose() * (*interior_hint - flat.base);
  }
  // Project y onto the flat, then walk toward an interior point of the flat.
  Vector c = Q.transpose() * (y - flat.base);
  Vector z = flat.base + Q * c;
  if (f.classify(z) == Region::Interior) return c;
  // Fall back to the base point, pulled interior toward y if needed.
  Vector anchor = flat.base;
  if (f.classify(anchor) != Region::Interior)
    anchor = pull_to_interior(f, anchor, euclid_project(flat, y));
  z = pull_to_interior(f, z, anchor);
  return Q.transpose() * (z - flat.base);
}

}  // namespace

ProjectionResult backward_bregman_project(const LegendreFunction& f,
                                          const AffineFlat& flat, const Vector& y,
                                          std::optional<Vector> interior_hint) {
  if (f.classify(y) != Region::Interior)
    throw DomainError("backward projection: y must be interior");
  const Matrix Q = flat.orthonormal_basis();
  if (Q.cols() == 0) {
    if (f.classify(flat.base) != Region::Interior)
      throw DomainError("backward projection: the flat is a point outside int dom f");
    return {flat.base, 0.0, 0};
  }
  const Vector gy = f.gradient(y);

  detail::NewtonProblem problem;
  problem.feasible = [&](const Vector& z) { return f.classify(z) == Region::Interior; };
  problem.residual = [&](const Vector& z) -> Vector {
    return Q.transpose() * (f.gradient(z) - gy);
  };
  problem.jacobian = [&](const Vector& z) -> Matrix {
    return Q.transpose() * f.hessian_diagonal(z).asDiagonal() * Q;
  };

  const Vector c0 = projection_start(f, flat, Q, y, interior_hint);
  const auto outcome = detail::damped_newton(problem, flat.base, Q, c0);
  return {outcome.z, outcome.residual_norm, outcome.iterations};
}

ProjectionResult forward_bregman_project(const LegendreFunction& f,
                                         const AffineFlat& flat, const Vector& y,
                                         std::optional<Vector> interior_hint) {
  if (!f.allows_forward_projections())
    throw UnsupportedError("forward projection: D_f(y, .) is not convex for '" +
                           f.name() + "'");
  if (f.classify(y) != Region::Interior)
    throw DomainError("forward projection: y must be interior");
  const Matrix Q = flat.orthonormal_basis();
  if (Q.cols() == 0) {
    if (f.classify(flat.base) != Region::Interior)
      throw DomainError("forward projection: the flat is a point outside int dom f");
    return {flat.base, 0.0, 0};
  }

  detail::NewtonProblem problem;
  problem.feasible = [&](const Vector& z) { return f.classify(z) == Region::Interior; };
  problem.residual = [&](const Vector& z) -> Vector {
    return Q.transpose() * (f.hessian_diagonal(z).cwiseProduct(y - z));
  };
  if (f.separable()) {
    problem.jacobian = [&](const Vector& z) -> Matrix {
      // d/dz [H(z)(y-z)] = diag(d3(z) .* (y-z) - d2(z))
      const Vector diag =
          f.hessian_diagonal_slope(z).cwiseProduct(y - z) - f.hessian_diagonal(z);
      return Q.transpose() * diag.asDiagonal() * Q;
    };
  } else {
    problem.jacobian = [&, residual = problem.residual](const Vector& z) -> Matrix {
      const double h = 1e-7 * (1.0 + z.lpNorm<Eigen::Infinity>());
      const Vector r0 = residual(z);
      Matrix J(Q.cols(), Q.cols());
      for (int j = 0; j < Q.cols(); ++j)
        J.col(j) = (residual(z + h * Q.col(j)) - r0) / h;
      return J;
    };
  }

  const Vector c0 = projection_start(f, flat, Q, y, interior_hint);
  const auto outcome = detail::damped_newton(problem, flat.base, Q, c0);
  return {outcome.z, outcome.residual_norm, outcome.iterations};
}

}  // namespace bregcc
