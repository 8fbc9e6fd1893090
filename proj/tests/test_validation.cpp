#include "doctest.h"

#include "czreach/brs.hpp"
#include "czreach/mink_diff.hpp"
#include "czreach/sample.hpp"
#include "czreach/scenarios.hpp"
#include "czreach/validation.hpp"

#include <cmath>

using namespace czreach;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("volume of simple sets") {
  CZ square(Hyperbox(v2(0, 0), v2(2, 2)));
  VolumeEstimate v = mc_volume(square, 20000, 1);
  CHECK(v.value == doctest::Approx(4.0).epsilon(1e-12));

  CZ x0 = double_integrator_problem(1).target;
  CHECK(mc_volume(x0, 5000, 2).value == doctest::Approx(1.0).epsilon(1e-12));

  // triangle x >= 0, y >= 0, x + y <= 2 inside the box [0,2]^2
  Mat G(2, 2);
  G << 1, 0, 0, 1;
  CZ tri = intersect_halfspace(CZ(G, v2(1, 1)), v2(1, 1), 2.0);
  VolumeEstimate t = mc_volume(tri, 20000, 3);
  CHECK(std::abs(t.value - 2.0) <= 3 * t.std_error);
  CHECK(t.std_error > 0);
  CHECK(t.samples == 20000);

  VolumeEstimate t2 = mc_volume(tri, 40000, 4);
  CHECK(std::abs(t.value - t2.value) <= 4 * std::hypot(t.std_error, t2.std_error));

  CHECK_THROWS_AS(mc_volume(square, 999, 1), std::invalid_argument);
}

TEST_CASE("polygon extraction") {
  Mat G(2, 3);
  G << 1, 0, 1, 0, 1, 1;
  CZ Z(G, v2(0, 0));
  std::vector<Vec> P = polygon_vertices_2d(Z);
  CHECK(P.size() == 6);
  // area of a zonotope: sum of |det| over generator pairs, times 4
  CHECK(polygon_area(P) == doctest::Approx(4.0 * (1 + 1 + 1)).epsilon(1e-9));
}

TEST_CASE("volume of a union counts overlaps once") {
  std::vector<CZ> sets{CZ(Hyperbox(v2(0, 0), v2(2, 1))), CZ(Hyperbox(v2(1, 0), v2(3, 1)))};
  VolumeEstimate v = mc_volume_union(sets, 40000, 5);
  CHECK(std::abs(v.value - 3.0) <= 4 * v.std_error + 1e-12);
  CHECK(v.bounding_box.lower()(0) == doctest::Approx(0.0));
  CHECK(v.bounding_box.upper()(0) == doctest::Approx(3.0));
}

TEST_CASE("brute-force difference of boxes matches the exact difference") {
  Hyperbox B(v2(-1, -1), v2(1, 1));
  HPolytope P(B);
  Zonotope Z(Hyperbox(v2(-0.3, -0.1), v2(0.3, 0.1)));
  const int res = 41;
  DiffGrid g = brute_force_diff_2d(CZ(B), Z, res);
  HPolytope D = exact_hrep_diff(P, Z);
  const double cell = 2.0 / (res - 1);
  int mismatches = 0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    double slack = (D.a() - D.H() * g.points[i]).minCoeff();
    bool exact_in = slack >= 0;
    if (std::abs(slack) > cell && exact_in != static_cast<bool>(g.in_difference[i])) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK_THROWS(brute_force_diff_2d(CZ(Hyperbox(Vec::Zero(3), Vec::Ones(3))), Zonotope(Hyperbox(Vec::Zero(3), Vec::Ones(3))), 5));
}

TEST_CASE("brute-force grid points translate into the minuend") {
  GapExample ex = gap_example();
  Zonotope W(Mat::Identity(2, 2) * 0.1, v2(0, 0));
  DiffGrid g = brute_force_diff_2d(ex.minuend, W, 25, 7);
  MemberSampler ws(CZ(W), 8);
  std::vector<Vec> wsamp = ws.samples(20);
  MembershipOracle in(ex.minuend);
  int inside = 0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    if (!g.in_difference[i]) continue;
    ++inside;
    for (const Vec& w : wsamp) CHECK(in.residual(g.points[i] + w) <= 1e-6);
  }
  CHECK(inside > 0);
}

TEST_CASE("hit tester agrees with membership LPs") {
  GapExample ex = gap_example();
  HitTester t(ex.minuend);
  Hyperbox b = t.box();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(b.lower()(0), b.upper()(0)), uy(b.lower()(1), b.upper()(1));
  for (int i = 0; i < 400; ++i) {
    Vec x = v2(ux(rng), uy(rng));
    double r = membership_residual(ex.minuend, x);
    if (r > 1e-5) CHECK_FALSE(t.contains(x));
    if (r == 0.0) CHECK(t.contains(x));
  }
}

TEST_CASE("control certificates") {
  ReachProblem p = double_integrator_problem(1);
  p.disturbance = Zonotope(p.disturbance.generators() * 0.05, p.disturbance.center());
  LinearizedModel lin = linearize(p.model, Vec::Zero(3));
  auto X = pre_linear(p.target, lin.A, lin.B, p);
  REQUIRE(X.has_value());
  Zonotope L(Mat::Zero(2, 0), Vec::Zero(2));
  Certificate c = control_certificate(interval_closure(*X).center(), p.model, Vec(), p.target, p.inputs,
                                      p.disturbance, L);
  CHECK(c.certified);
  CHECK(std::abs(c.u(0)) <= 1.5 + 1e-9);
  CHECK_FALSE(control_certificate(v2(40, 40), p.model, Vec(), p.target, p.inputs, p.disturbance, L).certified);
}

TEST_CASE("exact polygon helpers") {
  Polygon2 sq{v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)};
  CHECK(polygon_area(convex_hull_2d({v2(0, 0), v2(1, 1), v2(1, 0), v2(0, 1), v2(0.5, 0.5)})) == doctest::Approx(1.0));
  Polygon2 half = clip_halfplane(sq, v2(1, 0), 0.5);
  CHECK(polygon_area(half) == doctest::Approx(0.5));
  CHECK(clip_halfplane(sq, v2(1, 0), -1.0).empty());
  CHECK(polygon_contains(sq, v2(0.5, 0.5), 0));
  CHECK_FALSE(polygon_contains(sq, v2(1.5, 0.5), 1e-9));
}
