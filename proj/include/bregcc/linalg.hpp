// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bregcc/types.hpp"

namespace bregcc {

/**
 * An affine flat x = base + span(directions). directions is n x k with the
 * columns spanning the flat; they need not be orthonormal or independent.
 */
struct AffineFlat {
  Vector base;
  Matrix directions;  // n x k

  static AffineFlat through_points(const std::vector<Vector>& points);
  static AffineFlat single_point(Vector p);
  static AffineFlat full_space(int dim);

  int ambient_dimension() const { return static_cast<int>(base.size()); }

  // Orthonormal column basis of span(directions); empty for a single point.
  Matrix orthonormal_basis() const;
};

// Gram matrix of the columns of Z: G_ij = <z_i, z_j>.
Matrix gram(const Matrix& Z);

// Points p_0..p_m are affinely independent iff the differences p_i - p_0
// have full column rank.
bool affinely_independent(const std::vector<Vector>& points, double tol = kRankTol);

/**
 * Solve the constraints normals^T x = rhs for x restricted to a flat.
 * normals is n x m (one column per constraint). Returns Empty when the
 * constraints are inconsistent on the flat, UniquePoint when they pin the
 * point down, and Flat with an orthonormal null-space basis otherwise. The
 * representative point has minimal distance to flat.base among solutions.
 */
SolutionSet solve_affine_constraints(const AffineFlat& flat, const Matrix& normals,
                                     const Vector& rhs);

// Euclidean projection of y onto the flat.
Vector euclid_project(const AffineFlat& flat, const Vector& y);

/**
 * The unique point p in aff{z_0, ..., z_m} with <p - z_0, z_i - z_0> = lambda_i
 * for i = 1..m, computed through the Gram inverse of the differences. Throws
 * SolveError when the z_i are not affinely independent.
 */
Vector gram_system_point(const std::vector<Vector>& z, const Vector& lambda);

/**
 * Circumcenter of the points in the usual metric, restricted to their affine
 * hull. Empty is impossible for affinely independent inputs; affinely
 * dependent inputs may produce Empty (no equidistant point in the hull).
 */
SolutionSet classical_circumcenter(const std::vector<Vector>& points);

}  // namespace bregcc
