// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bregcc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Numerical policy shared across the library. Tolerances are absolute unless
// a call site scales them explicitly.
inline constexpr double kDomainMargin = 1e-12;  // interior slack per coordinate
inline constexpr double kRankTol = 1e-10;       // relative to the largest singular value
inline constexpr double kResidualTol = 1e-8;    // relative inconsistency threshold
inline constexpr double kNewtonTol = 1e-11;     // reduced-residual stopping level
inline constexpr int kNewtonMaxIter = 100;
inline constexpr int kMaxHalvings = 60;
inline constexpr double kCcTolBase = 1e-8;      // equidistance check, scaled by 1 + max distance
inline constexpr double kDualTol = 1e-7;        // duality comparisons, per coordinate

inline double inf() { return std::numeric_limits<double>::infinity(); }
inline double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Three-way domain classification. Boundary means in dom f but not in the
// margin interior; membership itself is closed-interval (boundary inclusive).
enum class Region { Interior, Boundary, Outside };

enum class SetKind { Empty, UniquePoint, Flat };

// Solution set of a linear system restricted to an affine flat.
// UniquePoint: point valid, null_basis empty. Flat: point is the particular
// solution closest to the flat's base; null_basis is orthonormal.
struct SolutionSet {
  SetKind kind = SetKind::Empty;
  Vector point;
  std::vector<Vector> null_basis;
};

enum class CcStatus {
  Ok,
  OutsideDomain,             // representative violates dom f (set value: empty)
  NoInteriorRepresentative,  // particular dual point not in int dom f*
  NumericalNonexistence,     // solver exhausted restarts on a consistent system
  VerificationWarning,       // post-hoc equidistance check failed
};

// Circumcenter-style result. domain describes set.point when one is present;
// equidistance_residual is NaN when no in-domain point was available to check.
struct CcResult {
  SolutionSet set;
  Region domain = Region::Outside;
  CcStatus status = CcStatus::Ok;
  double equidistance_residual = std::numeric_limits<double>::quiet_NaN();
  double solver_residual = 0.0;
  std::string detail;
};

inline bool cc_in_domain(const CcResult& r) {
  return r.set.kind == SetKind::UniquePoint &&
         (r.status == CcStatus::Ok || r.status == CcStatus::VerificationWarning) &&
         r.domain != Region::Outside;
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct UnsupportedError : Error {
  using Error::Error;
};
struct SolveError : Error {
  using Error::Error;
};

// Neumaier compensated summation; used where constant terms cancel badly.
inline double compensated_sum(std::initializer_list<double> terms) {
  double s = 0.0, c = 0.0;
  for (double t : terms) {
    double u = s + t;
    if (std::abs(s) >= std::abs(t))
      c += (s - u) + t;
    else
      c += (t - u) + s;
    s = u;
  }
  return s + c;
}

}  // namespace bregcc
