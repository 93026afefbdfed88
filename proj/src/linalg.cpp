// SPDX-License-Identifier: Apache-2.0
#include "bregcc/linalg.hpp"

#include <Eigen/Dense>

namespace bregcc {
namespace {

// Orthonormal basis of col(A) with strict rank truncation sigma > tol * sigma_max.
Matrix orthonormal_range(const Matrix& A, double tol) {
  if (A.cols() == 0) return Matrix(A.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] <= 0.0) return Matrix(A.rows(), 0);
  int rank = 0;
  while (rank < sigma.size() && sigma[rank] > tol * sigma[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

AffineFlat AffineFlat::through_points(const std::vector<Vector>& points) {
  if (points.empty()) throw InputError("AffineFlat: need at least one point");
  AffineFlat flat;
  flat.base = points[0];
  flat.directions.resize(points[0].size(), static_cast<int>(points.size()) - 1);
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != flat.base.size())
      throw InputError("AffineFlat: points have mixed dimensions");
    flat.directions.col(static_cast<int>(i) - 1) = points[i] - points[0];
  }
  return flat;
}

AffineFlat AffineFlat::single_point(Vector p) {
  AffineFlat flat;
  flat.directions.resize(p.size(), 0);
  flat.base = std::move(p);
  return flat;
}

AffineFlat AffineFlat::full_space(int dim) {
  AffineFlat flat;
  flat.base = Vector::Zero(dim);
  flat.directions = Matrix::Identity(dim, dim);
  return flat;
}

Matrix AffineFlat::orthonormal_basis() const {
  return orthonormal_range(directions, kRankTol);
}

Matrix gram(const Matrix& Z) { return Z.transpose() * Z; }

bool affinely_independent(const std::vector<Vector>& points, double tol) {
  if (points.size() <= 1) return true;
  const AffineFlat flat = AffineFlat::through_points(points);
  if (flat.directions.cols() > flat.directions.rows()) return false;
  Eigen::JacobiSVD<Matrix> svd(flat.directions);
  const auto& sigma = svd.singularValues();
  return sigma.size() > 0 && sigma[0] > 0.0 &&
         sigma[sigma.size() - 1] > tol * sigma[0];
}

SolutionSet solve_affine_constraints(const AffineFlat& flat, const Matrix& normals,
                                     const Vector& rhs) {
  if (normals.cols() != rhs.size())
    throw InputError("solve_affine_constraints: normals/rhs count mismatch");
  if (normals.rows() != flat.base.size())
    throw InputError("solve_affine_constraints: ambient dimension mismatch");

  SolutionSet out;
  const Vector base_residual = rhs - normals.transpose() * flat.base;
  const double rhs_scale = 1.0 + rhs.lpNorm<Eigen::Infinity>();

  // Parameterize the flat by an orthonormal basis Q; x = base + Q c.
  const Matrix Q = flat.orthonormal_basis();
  const int k = static_cast<int>(Q.cols());

  if (k == 0) {
    // single point: either it satisfies the constraints or nothing does
    if (base_residual.lpNorm<Eigen::Infinity>() > kResidualTol * rhs_scale) {
      out.kind = SetKind::Empty;
      return out;
    }
    out.kind = SetKind::UniquePoint;
    out.point = flat.base;
    return out;
  }

  if (normals.cols() == 0) {
    // unconstrained: the whole flat
    out.kind = SetKind::Flat;
    out.point = flat.base;
    out.null_basis.reserve(k);
    for (int j = 0; j < k; ++j) out.null_basis.push_back(Q.col(j));
    return out;
  }

  // Constraints in flat coordinates: M^T c = base_residual with M = Q^T N.
  const Matrix M = Q.transpose() * normals;  // k x m
  Eigen::JacobiSVD<Matrix> svd(M.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  int rank = 0;
  while (rank < sigma.size() && sigma[rank] > kRankTol * sigma[0]) ++rank;

  // Minimal-norm c solves the consistent part; check the rest is consistent.
  Vector c = Vector::Zero(k);
  for (int r = 0; r < rank; ++r)
    c += (svd.matrixU().col(r).dot(base_residual) / sigma[r]) * svd.matrixV().col(r);
  const Vector residual = M.transpose() * c - base_residual;
  if (residual.lpNorm<Eigen::Infinity>() > kResidualTol * rhs_scale) {
    out.kind = SetKind::Empty;
    return out;
  }

  out.point = flat.base + Q * c;
  if (rank == k) {
    out.kind = SetKind::UniquePoint;
    return out;
  }
  out.kind = SetKind::Flat;
  out.null_basis.reserve(k - rank);
  for (int r = rank; r < k; ++r) out.null_basis.push_back(Q * svd.matrixV().col(r));
  return out;
}

Vector euclid_project(const AffineFlat& flat, const Vector& y) {
  if (y.size() != flat.base.size())
    throw InputError("euclid_project: dimension mismatch");
  const Matrix Q = flat.orthonormal_basis();
  return flat.base + Q * (Q.transpose() * (y - flat.base));
}

Vector gram_system_point(const std::vector<Vector>& z, const Vector& lambda) {
  if (z.empty()) throw InputError("gram_system_point: need at least one point");
  const int m = static_cast<int>(z.size()) - 1;
  if (lambda.size() != m)
    throw InputError("gram_system_point: expected one value per difference");
  if (m == 0) return z[0];

  if (!affinely_independent(z))
    throw SolveError("gram_system_point: points are affinely dependent");
  Matrix D(z[0].size(), m);
  for (int i = 0; i < m; ++i) D.col(i) = z[i + 1] - z[0];
  const Matrix G = gram(D);
  return z[0] + D * Eigen::LDLT<Matrix>(G).solve(lambda);
}

SolutionSet classical_circumcenter(const std::vector<Vector>& points) {
  if (points.empty()) throw InputError("classical_circumcenter: no points");
  const int m = static_cast<int>(points.size()) - 1;
  if (m == 0) {
    SolutionSet out;
    out.kind = SetKind::UniquePoint;
    out.point = points[0];
    return out;
  }
  // Equidistance in the usual metric: <x - q_0, q_i - q_0> = (|q_i|^2 - |q_0|^2)/2
  //                                                           - <q_0, q_i - q_0>
  // which simplifies to <x, q_i - q_0> = (|q_i|^2 - |q_0|^2)/2.
  const AffineFlat hull = AffineFlat::through_points(points);
  Matrix normals(points[0].size(), m);
  Vector rhs(m);
  for (int i = 0; i < m; ++i) {
    normals.col(i) = points[i + 1] - points[0];
    rhs[i] = 0.5 * (points[i + 1].squaredNorm() - points[0].squaredNorm());
  }
  return solve_affine_constraints(hull, normals, rhs);
}

}  // namespace bregcc
