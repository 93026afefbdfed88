// SPDX-License-Identifier: Apache-2.0
#include "bregcc/forward.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bregcc;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

Vector vec3(double a, double b, double c) {
  Vector v(3);
  v << a, b, c;
  return v;
}

constexpr double kFourOverE = 1.4715177646857693;  // 4 / e

}  // namespace

TEST_CASE("problem construction admits boundary sites") {
  const auto fd = make_function("fermi_dirac", 1);
  // Boundary sites are fine for the forward problem; exterior ones are not.
  CHECK_NOTHROW(ForwardProblem::create(fd, {vec1(0.2), vec1(1.0)}));
  CHECK_THROWS_AS(ForwardProblem::create(fd, {vec1(0.2), vec1(1.5)}),
                  DomainError);
  CHECK_THROWS_AS(ForwardProblem::create(fd, {}), InputError);
  CHECK_THROWS_AS(ForwardProblem::create(nullptr, {vec1(0.5)}), InputError);
}

TEST_CASE("negative entropy three-site instance") {
  const auto ne = make_function("negative_entropy", 3);
  const auto problem = ForwardProblem::create(
      ne, {vec3(1, 1, 1), vec3(1, 2, 1), vec3(1, 1, 2)});

  SUBCASE("circumcenter") {
    const auto result = forward_circumcenter(problem);
    REQUIRE(result.set.kind == SetKind::UniquePoint);
    CHECK(result.status == CcStatus::Ok);
    CHECK((result.set.point - vec3(1, kFourOverE, kFourOverE))
              .lpNorm<Eigen::Infinity>() < 1e-8);
    CHECK(result.solver_residual <= kNewtonTol);
    CHECK(result.equidistance_residual <
          forward_cc_tolerance(problem, result.set.point));
  }

  SUBCASE("dual representative") {
    const auto e = forward_E_representative(problem);
    REQUIRE(e.dual_set.kind == SetKind::Flat);
    REQUIRE(e.representative.has_value());
    // The minimal-norm dual solution maps to the circumcenter here.
    CHECK((*e.representative - vec3(1, kFourOverE, kFourOverE))
              .lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK(forward_equidistance_gap(problem, *e.representative) < 1e-10);
  }

  SUBCASE("pseudo circumcenter") {
    const auto result = forward_pseudo_circumcenter(problem);
    REQUIRE(result.set.kind == SetKind::UniquePoint);
    CHECK(result.status == CcStatus::Ok);
    CHECK((result.set.point - vec3(std::exp(1.0), kFourOverE, kFourOverE))
              .lpNorm<Eigen::Infinity>() < 1e-9);
    // The pseudo point is itself forward-equidistant.
    CHECK(result.equidistance_residual <
          forward_cc_tolerance(problem, result.set.point));
  }

  SUBCASE("projection route agrees") {
    const auto projected = forward_pseudo_via_projection(problem);
    REQUIRE(projected.has_value());
    CHECK((*projected - vec3(std::exp(1.0), kFourOverE, kFourOverE))
              .lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("fermi dirac three-site instance") {
  const auto fd = make_function("fermi_dirac", 3);
  const auto problem = ForwardProblem::create(
      fd, {vec3(0.25, 0.25, 0.25), vec3(0.25, 0.5, 0.25), vec3(0.25, 0.25, 0.5)});

  const auto result = forward_circumcenter(problem);
  REQUIRE(result.set.kind == SetKind::UniquePoint);
  // The last two coordinates are exactly 16/43.
  CHECK((result.set.point - vec3(0.25, 16.0 / 43.0, 16.0 / 43.0))
            .lpNorm<Eigen::Infinity>() < 1e-9);

  const auto pseudo = forward_pseudo_circumcenter(problem);
  REQUIRE(pseudo.set.kind == SetKind::UniquePoint);
  CHECK(pseudo.equidistance_residual <
        forward_cc_tolerance(problem, pseudo.set.point));
  // The pseudo keeps the equidistant coordinates but moves off aff(S)
  // in the free one (it is the gradient-inverse of an aff(S) dual point).
  CHECK(pseudo.set.point[1] == doctest::Approx(16.0 / 43.0).epsilon(1e-9));
}

TEST_CASE("two-site closed form in one dimension") {
  const auto ne = make_function("negative_entropy", 1);
  std::mt19937_64 rng(510);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  int tested = 0;
  while (tested < 20) {
    const double x = u(rng), y = u(rng);
    if (std::abs(x - y) < 0.05) continue;
    ++tested;
    const auto problem = ForwardProblem::create(ne, {vec1(x), vec1(y)});
    const auto result = forward_circumcenter(problem);
    REQUIRE(result.set.kind == SetKind::UniquePoint);
    // ln c (y - x) = f(y) - f(x) with f(t) = t ln t - t.
    const double expected =
        std::exp((y * std::log(y) - x * std::log(x) + x - y) / (y - x));
    CHECK(std::abs(result.set.point[0] - expected) <
          1e-10 * (1.0 + expected));
  }
}

TEST_CASE("one-dimensional three-site instances are certified empty") {
  const auto ne = make_function("negative_entropy", 1);
  const auto p1 = ForwardProblem::create(ne, {vec1(1), vec1(2), vec1(3)});
  const auto r1 = forward_circumcenter(p1);
  CHECK(r1.set.kind == SetKind::Empty);
  // Emptiness here is certified by the inconsistent dual system, not a
  // solver giving up.
  CHECK(r1.status == CcStatus::Ok);
  CHECK(r1.detail.find("inconsistent") != std::string::npos);

  const auto fd = make_function("fermi_dirac", 1);
  const auto p2 = ForwardProblem::create(fd, {vec1(0.2), vec1(0.5), vec1(0.8)});
  const auto r2 = forward_circumcenter(p2);
  CHECK(r2.set.kind == SetKind::Empty);
  CHECK(r2.status == CcStatus::Ok);

  const auto e = forward_E_representative(p2);
  CHECK(e.dual_set.kind == SetKind::Empty);
  CHECK_FALSE(e.representative.has_value());
}

TEST_CASE("singletons") {
  const auto ne = make_function("negative_entropy", 2);
  const auto problem = ForwardProblem::create(ne, {vec2(0.5, 1)});

  const auto cc = forward_circumcenter(problem);
  REQUIRE(cc.set.kind == SetKind::UniquePoint);
  CHECK((cc.set.point - vec2(0.5, 1)).lpNorm<Eigen::Infinity>() == 0.0);

  // The pseudo lives in gradient-inverse coordinates: grad f*(p_0).
  const auto pseudo = forward_pseudo_circumcenter(problem);
  REQUIRE(pseudo.set.kind == SetKind::UniquePoint);
  CHECK((pseudo.set.point - vec2(std::exp(0.5), std::exp(1.0)))
            .lpNorm<Eigen::Infinity>() < 1e-14);

  // A boundary singleton has no interior equidistant point.
  const auto fd = make_function("fermi_dirac", 1);
  const auto boundary = ForwardProblem::create(fd, {vec1(0.0)});
  const auto empty = forward_circumcenter(boundary);
  CHECK(empty.set.kind == SetKind::Empty);
  CHECK(empty.status == CcStatus::Ok);
}

TEST_CASE("pseudo with no interior dual representative is empty") {
  const auto ns = make_function("neg_sqrt", 2);
  const auto problem = ForwardProblem::create(ns, {vec2(1, 1), vec2(4, 1)});
  const auto result = forward_pseudo_circumcenter(problem);
  CHECK(result.set.kind == SetKind::Empty);
  CHECK(result.status == CcStatus::NoInteriorRepresentative);
  CHECK(result.detail.find("int dom f*") != std::string::npos);
  CHECK(!forward_pseudo_via_projection(problem).has_value());
}

TEST_CASE("energy forward circumcenter is the classical one") {
  const auto en = make_function("energy", 3);
  std::mt19937_64 rng(511);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Vector> sites;
    for (int i = 0; i < 3; ++i) {
      Vector v(3);
      for (int j = 0; j < 3; ++j) v[j] = u(rng);
      sites.push_back(v);
    }
    if (!affinely_independent(sites, 1e-3)) continue;  // keep conditioning sane
    const auto problem = ForwardProblem::create(en, sites);
    const auto forward = forward_circumcenter(problem);
    const auto classical = classical_circumcenter(sites);
    REQUIRE(forward.set.kind == SetKind::UniquePoint);
    REQUIRE(classical.kind == SetKind::UniquePoint);
    CHECK((forward.set.point - classical.point).lpNorm<Eigen::Infinity>() <
          1e-9 * (1.0 + classical.point.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("seeded restarts are deterministic") {
  const auto fd = make_function("fermi_dirac", 3);
  const auto problem = ForwardProblem::create(
      fd, {vec3(0.1, 0.2, 0.3), vec3(0.3, 0.1, 0.2), vec3(0.2, 0.3, 0.1)});
  const auto a = forward_circumcenter(problem, 7);
  const auto b = forward_circumcenter(problem, 7);
  REQUIRE(a.set.kind == SetKind::UniquePoint);
  REQUIRE(b.set.kind == SetKind::UniquePoint);
  CHECK((a.set.point - b.set.point).lpNorm<Eigen::Infinity>() == 0.0);
  // A different seed still finds the same (unique) point.
  const auto c = forward_circumcenter(problem, 999);
  REQUIRE(c.set.kind == SetKind::UniquePoint);
  CHECK((a.set.point - c.set.point).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("boundary sites keep finite distances to the solution") {
  const auto fd = make_function("fermi_dirac", 1);
  const auto problem = ForwardProblem::create(fd, {vec1(0.2), vec1(1.0)});
  const auto result = forward_circumcenter(problem);
  REQUIRE(result.set.kind == SetKind::UniquePoint);
  const double y = result.set.point[0];
  CHECK(y > 0.0);
  CHECK(y < 1.0);
  CHECK(std::isfinite(bregman_distance(*fd, vec1(1.0), result.set.point)));
  CHECK(result.equidistance_residual <
        forward_cc_tolerance(problem, result.set.point));
}
