// SPDX-License-Identifier: Apache-2.0
#include "bregcc/oracle.hpp"

#include "bregcc/bregman.hpp"

#include <cmath>

namespace bregcc {
namespace {

// Distances from the definition only. NaN marks an infeasible candidate.
std::optional<std::vector<double>> site_distances(const LegendreFunction& fn,
                                                  const std::vector<Vector>& sites,
                                                  const Vector& candidate,
                                                  CcMode mode) {
  std::vector<double> d;
  d.reserve(sites.size());
  for (const Vector& s : sites) {
    const double v = mode == CcMode::Backward ? bregman_distance(fn, candidate, s)
                                              : bregman_distance(fn, s, candidate);
    if (!std::isfinite(v)) return std::nullopt;
    d.push_back(v);
  }
  return d;
}

double worst_pairwise_gap(const std::vector<double>& d) {
  double lo = d[0], hi = d[0];
  for (double v : d) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace

VerificationReport verify_equidistance(const FunctionPtr& fn,
                                       const std::vector<Vector>& sites,
                                       const Vector& candidate, CcMode mode,
                                       double tol) {
  VerificationReport report;
  report.method = OracleMethod::ConstraintResidual;
  report.claim = std::string(mode == CcMode::Backward ? "backward" : "forward") +
                 " equidistance of the candidate against " +
                 std::to_string(sites.size()) + " sites";
  if (sites.empty()) throw InputError("verify_equidistance: no sites");
  for (const Vector& s : sites)
    if (s.size() != candidate.size())
      throw InputError("verify_equidistance: dimension mismatch");

  const auto d = site_distances(*fn, sites, candidate, mode);
  if (!d) {
    report.pass = false;
    report.worst_residual = inf();
    report.detail = mode == CcMode::Backward
                        ? "candidate is outside dom f"
                        : "candidate is outside int dom f";
    return report;
  }
  report.worst_residual = worst_pairwise_gap(*d);
  report.pass = report.worst_residual <= tol;
  return report;
}

std::optional<Vector> grid_refine_search(const FunctionPtr& fn,
                                         const std::vector<Vector>& sites,
                                         const AffineFlat& flat, CcMode mode,
                                         double grid_radius, int levels) {
  const Matrix Q = flat.orthonormal_basis();
  const int k = static_cast<int>(Q.cols());
  if (k > 3)
    throw InputError("grid_refine_search: flat dimension must be at most 3");

  constexpr int kNodes = 21;
  Vector center = Vector::Zero(k);
  double radius = grid_radius;
  double best_gap = inf();
  Vector best_point;

  for (int level = 0; level < levels; ++level) {
    Vector best_c = center;
    // Full grid over [-radius, radius]^k around the incumbent.
    const int total = static_cast<int>(std::pow(kNodes, std::max(k, 1)));
    for (int idx = 0; idx < total; ++idx) {
      Vector c = center;
      int rest = idx;
      for (int axis = 0; axis < k; ++axis) {
        const int node = rest % kNodes;
        rest /= kNodes;
        c[axis] += radius * (2.0 * node / (kNodes - 1) - 1.0);
      }
      const Vector x = flat.base + Q * c;
      const auto d = site_distances(*fn, sites, x, mode);
      if (!d) continue;  // infeasible node: skipped, not penalized
      const double gap = worst_pairwise_gap(*d);
      if (gap < best_gap) {
        best_gap = gap;
        best_point = x;
        best_c = c;
      }
      if (k == 0) break;
    }
    center = best_c;
    radius /= 10.0;
  }

  if (best_gap > 1e-3) return std::nullopt;
  return best_point;
}

std::optional<double> scalar_root_oracle(const std::function<double(double)>& g,
                                         double lo, double hi, double tol) {
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (std::signbit(glo) == std::signbit(ghi)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double gmid = g(mid);
    if (gmid == 0.0) return mid;
    if (std::signbit(gmid) == std::signbit(glo)) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace bregcc
