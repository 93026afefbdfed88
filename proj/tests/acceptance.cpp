// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run for the solver stack. Each criterion prints exactly one
// line, PASS or FAIL, with the measured numbers; the exit code is the number
// of failed criteria. Tolerances are fixed here on purpose: loosening them
// to make a line turn green defeats the point of the file.
#include "bregcc/duality.hpp"
#include "bregcc/oracle.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bregcc;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, bool pass, const std::string& message) {
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " - "
            << message << "\n";
  if (!pass) ++g_failures;
}

Vector vec(std::initializer_list<double> entries) {
  Vector v(static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) v[i++] = e;
  return v;
}

std::string fmt(const Vector& v) {
  std::ostringstream out;
  out.precision(7);
  out << "(";
  for (int i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ")";
  return out.str();
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

double dev_or_inf(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return inf();
  if (a.size() == 0) return 0.0;
  return (a - b).lpNorm<Eigen::Infinity>();
}

const std::vector<Vector>& ne_sites() {
  static const std::vector<Vector> sites = {vec({1, 1, 1}), vec({1, 2, 1}),
                                            vec({1, 1, 2})};
  return sites;
}

const std::vector<Vector>& fd_sites() {
  static const std::vector<Vector> sites = {
      vec({0.25, 0.25, 0.25}), vec({0.25, 0.5, 0.25}), vec({0.25, 0.25, 0.5})};
  return sites;
}

const std::vector<Vector>& burg_sites() {
  static const std::vector<Vector> sites = {vec({1, 2, 1}), vec({0.5, 1.5, 0.5}),
                                            vec({1.5, 2.5, 1.5})};
  return sites;
}

constexpr double kInvLn2 = 1.4426950408889634;
constexpr double kFourOverE = 1.4715177646857693;
constexpr double kE = 2.718281828459045;
constexpr double kFdBackwardCoord = 0.36907024642854264;  // (ln 3 - ln 2) / ln 3

// ---- criteria --------------------------------------------------------------

void criterion_1() {
  const auto fn = make_function("negative_entropy", 3);
  const Vector want = vec({1.0, kInvLn2, kInvLn2});
  const auto t0 = Clock::now();
  const CcResult r = backward_circumcenter(BackwardProblem::create(fn, ne_sites()));
  const double ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  const double d = dev_or_inf(r.set.point, want);
  const bool ok = r.set.kind == SetKind::UniquePoint && r.status == CcStatus::Ok &&
                  d <= 1e-9 && ms < 10.0;
  report(1, ok,
         "backward circumcenter, negative entropy: point " + fmt(r.set.point) +
             ", deviation " + fmt(d) + ", solved in " + fmt(ms) + " ms");
}

void criterion_2() {
  const auto fn = make_function("fermi_dirac", 3);
  const Vector want = vec({0.25, kFdBackwardCoord, kFdBackwardCoord});
  const CcResult r = backward_circumcenter(BackwardProblem::create(fn, fd_sites()));
  const double d = dev_or_inf(r.set.point, want);
  const bool ok = r.set.kind == SetKind::UniquePoint && r.status == CcStatus::Ok &&
                  d <= 1e-9;
  report(2, ok,
         "backward circumcenter, Fermi-Dirac entropy: point " + fmt(r.set.point) +
             ", deviation " + fmt(d));
}

void criterion_3() {
  const auto fn = make_function("negative_entropy", 3);
  const Vector want = vec({1.0, kFourOverE, kFourOverE});
  const CcResult r = forward_circumcenter(ForwardProblem::create(fn, ne_sites()));
  const double d = dev_or_inf(r.set.point, want);
  const bool ok = r.set.kind == SetKind::UniquePoint && r.status == CcStatus::Ok &&
                  d <= 1e-8;
  report(3, ok,
         "forward circumcenter, negative entropy: point " + fmt(r.set.point) +
             ", deviation " + fmt(d));
}

void criterion_4() {
  const auto fn = make_function("fermi_dirac", 3);
  const double coord = 16.0 / 43.0;
  const Vector want = vec({0.25, coord, coord});
  const CcResult r = forward_circumcenter(ForwardProblem::create(fn, fd_sites()));
  const double d = dev_or_inf(r.set.point, want);
  const bool ok = r.set.kind == SetKind::UniquePoint && r.status == CcStatus::Ok &&
                  d <= 1e-8;
  report(4, ok,
         "forward circumcenter, Fermi-Dirac entropy: point " + fmt(r.set.point) +
             ", deviation " + fmt(d));
}

// The reference point for this instance does not satisfy the equidistance
// definition: the restricted system has a unique solution and it lies outside
// dom f, so the pseudo circumcenter set is empty. The solver reports exactly
// that, and this criterion is expected to stay red against the reference.
void criterion_5() {
  const auto fn = make_function("burg_entropy", 3);
  const Vector reference = vec({0.7641, 0.8744, 0.7641});
  const CcResult r =
      backward_pseudo_circumcenter(BackwardProblem::create(fn, burg_sites()));
  const double d = dev_or_inf(r.set.point, reference);
  const bool reference_met = cc_in_domain(r) && d <= 5e-4;

  const bool dependence_reported =
      !affinely_independent(burg_sites()) &&
      classical_circumcenter(burg_sites()).kind == SetKind::Empty;

  std::ostringstream msg;
  msg << "backward pseudo circumcenter, Burg entropy: ";
  if (reference_met) {
    msg << "matches the reference within 5e-4";
  } else {
    msg << "reference " << fmt(reference) << " unmet; the restricted system's "
        << "unique solution " << fmt(r.set.point) << " lies outside dom f "
        << "(certified empty, deviation " << fmt(d) << ")";
  }
  msg << "; classical circumcenter reports the affine dependence: "
      << (dependence_reported ? "yes" : "no");
  report(5, reference_met && dependence_reported, msg.str());
}

void criterion_6() {
  const auto fn = make_function("negative_entropy", 3);
  const auto problem = BackwardProblem::create(fn, ne_sites());
  const CcResult back = backward_pseudo_circumcenter(problem);
  const Vector back_want = vec({0.0, kInvLn2, kInvLn2});
  const double back_dev = dev_or_inf(back.set.point, back_want);

  const CcResult fwd =
      forward_pseudo_circumcenter(ForwardProblem::create(fn, ne_sites()));
  const Vector fwd_want = vec({kE, kFourOverE, kFourOverE});
  const double fwd_dev = dev_or_inf(fwd.set.point, fwd_want);

  const bool ok = back.set.kind == SetKind::UniquePoint &&
                  back.status == CcStatus::Ok && back_dev <= 1e-9 &&
                  fwd.set.kind == SetKind::UniquePoint &&
                  fwd.status == CcStatus::Ok && fwd_dev <= 1e-9;
  report(6, ok,
         "pseudo circumcenter pair, negative entropy: backward " +
             fmt(back.set.point) + " (deviation " + fmt(back_dev) +
             "), forward " + fmt(fwd.set.point) + " (deviation " + fmt(fwd_dev) +
             ")");
}

void criterion_7() {
  const auto ne1 = make_function("negative_entropy", 1);
  const auto fd1 = make_function("fermi_dirac", 1);
  const std::vector<Vector> ne_line = {vec({1}), vec({2}), vec({3})};
  const std::vector<Vector> fd_line = {vec({0.2}), vec({0.5}), vec({0.8})};

  int empties = 0;
  const auto count_empty = [&empties](const CcResult& r) {
    if (r.set.kind == SetKind::Empty && r.status == CcStatus::Ok) ++empties;
  };
  count_empty(backward_circumcenter(BackwardProblem::create(ne1, ne_line)));
  count_empty(forward_circumcenter(ForwardProblem::create(ne1, ne_line)));
  count_empty(backward_circumcenter(BackwardProblem::create(fd1, fd_line)));
  count_empty(forward_circumcenter(ForwardProblem::create(fd1, fd_line)));

  // Two-site one-dimensional instances always have a forward circumcenter
  // with a closed form; the solver must reproduce it.
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> coord(0.2, 5.0);
  double worst = 0.0;
  int checked = 0;
  while (checked < 20) {
    const double x = coord(rng), y = coord(rng);
    if (std::abs(x - y) < 0.05) continue;
    const double want =
        std::exp((x * std::log(x) - y * std::log(y) + y - x) / (x - y));
    const CcResult r =
        forward_circumcenter(ForwardProblem::create(ne1, {vec({x}), vec({y})}));
    if (r.set.kind != SetKind::UniquePoint) {
      worst = inf();
      break;
    }
    worst = std::max(worst,
                     std::abs(r.set.point[0] - want) / (1.0 + std::abs(want)));
    ++checked;
  }

  const bool ok = empties == 4 && worst <= 1e-10;
  report(7, ok,
         "one-dimensional instances: " + std::to_string(empties) +
             "/4 three-site sets certified empty, 20 two-site closed forms "
             "reproduced to " +
             fmt(worst));
}

void criterion_8() {
  std::mt19937_64 rng(108);
  std::uniform_int_distribution<int> dim_dist(1, 6);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);

  double worst = 0.0;
  std::string why;
  int done = 0;
  while (done < 50 && why.empty()) {
    const int n = dim_dist(rng);
    std::uniform_int_distribution<int> count_dist(1, n + 1);
    const int count = count_dist(rng);
    std::vector<Vector> sites;
    for (int s = 0; s < count; ++s) {
      Vector p(n);
      for (int i = 0; i < n; ++i) p[i] = coord(rng);
      sites.push_back(p);
    }
    if (!affinely_independent(sites, 1e-3)) continue;

    const auto fn = make_function("energy", n);
    const SolutionSet classical = classical_circumcenter(sites);
    if (classical.kind != SetKind::UniquePoint) {
      why = "classical circumcenter degenerated";
      break;
    }

    const auto bp = BackwardProblem::create(fn, sites);
    const auto fp = ForwardProblem::create(fn, sites);
    const CcResult results[] = {backward_circumcenter(bp),
                                backward_pseudo_circumcenter(bp),
                                forward_circumcenter(fp),
                                forward_pseudo_circumcenter(fp)};
    for (const CcResult& r : results) {
      if (r.set.kind != SetKind::UniquePoint || r.status != CcStatus::Ok) {
        why = "an operator failed to produce a unique point";
        break;
      }
      worst = std::max(worst, dev_or_inf(r.set.point, classical.point));
    }
    ++done;
  }

  const bool ok = why.empty() && worst <= 1e-9;
  report(8, ok,
         why.empty()
             ? "energy reduction: all four operators match the classical "
               "circumcenter on 50 random site sets, worst deviation " +
                   fmt(worst)
             : "energy reduction: " + why);
}

void criterion_9() {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> dim_dist(2, 4);
  std::uniform_real_distribution<double> coord(0.5, 3.0);

  double worst = 0.0;
  int interior = 0, empty = 0;
  std::string why;
  int done = 0;
  while (done < 50 && why.empty()) {
    const int n = dim_dist(rng);
    std::uniform_int_distribution<int> count_dist(2, n + 1);
    const int count = count_dist(rng);
    const auto fn = make_function("burg_entropy", n);
    std::vector<Vector> sites;
    std::vector<Vector> grads;
    for (int s = 0; s < count; ++s) {
      Vector p(n);
      for (int i = 0; i < n; ++i) p[i] = coord(rng);
      sites.push_back(p);
      grads.push_back(fn->gradient(p));
    }
    if (!affinely_independent(grads, 1e-3)) continue;

    const DualityReport r = check_pseudo_duality(fn, sites);
    if (r.status != DualityStatus::Match) {
      why = "a conditioned instance did not match (status " +
            std::to_string(static_cast<int>(r.status)) + ")";
      break;
    }
    worst = std::max(worst, r.max_deviation);
    if (r.lhs.kind == SetKind::UniquePoint)
      ++interior;
    else
      ++empty;
    ++done;
  }

  const bool ok = why.empty() && worst <= kDualTol;
  report(9, ok,
         why.empty() ? "pseudo duality, Burg entropy: 50 random instances match (" +
                           std::to_string(interior) + " interior, " +
                           std::to_string(empty) +
                           " certified empty on both sides), worst deviation " +
                           fmt(worst)
                     : "pseudo duality, Burg entropy: " + why);
}

// ---- criterion 10: invariant sweeps ----------------------------------------

double derivative_fd_sweep(std::mt19937_64& rng) {
  double worst = 0.0;
  for (const std::string& name : catalog_names()) {
    const auto fn = make_function(name, 3);
    for (int trial = 0; trial < 6; ++trial) {
      const Vector x = fn->sample_interior(rng);
      const Vector g = fn->gradient(x);
      const Vector h = fn->hessian_diagonal(x);
      for (int i = 0; i < x.size(); ++i) {
        const double step = 1e-6 * (1.0 + std::abs(x[i]));
        Vector hi = x, lo = x;
        hi[i] += step;
        lo[i] -= step;
        const double g_fd = (fn->value(hi) - fn->value(lo)) / (2.0 * step);
        worst = std::max(worst, std::abs(g_fd - g[i]) / (1.0 + std::abs(g[i])));
        const double h_fd =
            (fn->gradient(hi)[i] - fn->gradient(lo)[i]) / (2.0 * step);
        worst = std::max(worst, std::abs(h_fd - h[i]) / (1.0 + std::abs(h[i])));
      }
    }
  }
  return worst;
}

double conjugacy_sweep(std::mt19937_64& rng) {
  double worst = 0.0;
  for (const std::string& name : catalog_names()) {
    const auto fn = make_function(name, 3);
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = fn->sample_interior(rng);
      const Vector g = fn->gradient(x);
      const Vector back = fn->conjugate_gradient(g);
      worst = std::max(worst, (back - x).lpNorm<Eigen::Infinity>() /
                                  (1.0 + x.lpNorm<Eigen::Infinity>()));
      const double fy = fn->value(x) + fn->conjugate_value(g) - g.dot(x);
      worst = std::max(worst, std::abs(fy) / (1.0 + std::abs(fn->value(x))));
    }
  }
  return worst;
}

double three_point_sweep(std::mt19937_64& rng) {
  double worst = 0.0;
  for (const std::string& name :
       {"negative_entropy", "fermi_dirac", "energy", "burg_entropy"}) {
    const auto fn = make_function(name, 3);
    for (int trial = 0; trial < 5; ++trial) {
      const Vector a = fn->sample_interior(rng);
      const Vector b = fn->sample_interior(rng);
      const Vector y = fn->sample_interior(rng);
      if (!affinely_independent({a, b}, 1e-3)) continue;
      const AffineFlat flat = AffineFlat::through_points({a, b});
      const Vector z = backward_bregman_project(*fn, flat, y).point;
      // x = a lies on the flat, so the projection identity is an equality.
      const double lhs = bregman_distance(*fn, a, y);
      const double rhs =
          bregman_distance(*fn, a, z) + bregman_distance(*fn, z, y);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + lhs));
    }
  }
  return worst;
}

double oracle_agreement_sweep() {
  double worst = 0.0;
  const auto agree = [&worst](const FunctionPtr& fn, const std::vector<Vector>& sites,
                              const AffineFlat& flat, CcMode mode,
                              const Vector& solver_point) {
    const auto oracle = grid_refine_search(fn, sites, flat, mode);
    if (!oracle) {
      worst = inf();
      return;
    }
    worst = std::max(worst, dev_or_inf(*oracle, solver_point));
  };

  const auto ne = make_function("negative_entropy", 3);
  const auto fd = make_function("fermi_dirac", 3);

  const auto ne_back = BackwardProblem::create(ne, ne_sites());
  agree(ne, ne_sites(), ne_back.point_hull, CcMode::Backward,
        backward_circumcenter(ne_back).set.point);
  agree(ne, ne_sites(), ne_back.gradient_hull, CcMode::Backward,
        backward_pseudo_circumcenter(ne_back).set.point);

  const auto fd_back = BackwardProblem::create(fd, fd_sites());
  agree(fd, fd_sites(), fd_back.point_hull, CcMode::Backward,
        backward_circumcenter(fd_back).set.point);

  const auto ne_fwd = ForwardProblem::create(ne, ne_sites());
  agree(ne, ne_sites(), ne_fwd.point_hull, CcMode::Forward,
        forward_circumcenter(ne_fwd).set.point);

  const auto fd_fwd = ForwardProblem::create(fd, fd_sites());
  agree(fd, fd_sites(), fd_fwd.point_hull, CcMode::Forward,
        forward_circumcenter(fd_fwd).set.point);

  return worst;
}

void criterion_10(const Clock::time_point& started) {
  std::mt19937_64 rng(110);
  const double fd_worst = derivative_fd_sweep(rng);
  const double conj_worst = conjugacy_sweep(rng);
  const double three_worst = three_point_sweep(rng);
  const double oracle_worst = oracle_agreement_sweep();
  const double seconds =
      std::chrono::duration<double>(Clock::now() - started).count();

  const bool ok = fd_worst <= 1e-5 && conj_worst <= 1e-10 &&
                  three_worst <= 1e-8 && oracle_worst <= 1e-3 && seconds < 60.0;
  report(10, ok,
         "invariants: derivative checks " + fmt(fd_worst) + ", conjugacy " +
             fmt(conj_worst) + ", projection identity " + fmt(three_worst) +
             ", oracle agreement " + fmt(oracle_worst) + ", total " +
             fmt(seconds) + " s");
}

}  // namespace

int main() {
  const auto started = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(started);
  return g_failures;
}
