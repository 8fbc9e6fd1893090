#include "doctest.h"

#include "czreach/brs.hpp"
#include "czreach/sample.hpp"
#include "czreach/scenarios.hpp"
#include "czreach/validation.hpp"

#include <random>

using namespace czreach;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Hyperbox box2(double x0, double x1, double y0, double y1) { return Hyperbox(v2(x0, y0), v2(x1, y1)); }

Polygon2 box_polygon(const Hyperbox& b) {
  return {v2(b.lower()(0), b.lower()(1)), v2(b.upper()(0), b.lower()(1)), v2(b.upper()(0), b.upper()(1)),
          v2(b.lower()(0), b.upper()(1))};
}

ReachProblem integrator_with_scaled_disturbance(double scale, int horizon) {
  ReachProblem p = double_integrator_problem(horizon);
  p.disturbance = Zonotope(p.disturbance.generators() * scale, p.disturbance.center());
  return p;
}

std::vector<Polygon2> exact_integrator(const ReachProblem& p) {
  LinearizedModel lin = linearize(p.model, Vec::Zero(p.model.n + p.model.q));
  return exact_linear_brs_2d(lin.A, lin.B, box_polygon(interval_closure(p.target)), p.model.default_inputs,
                             p.disturbance, p.safe.pieces().front(), p.horizon);
}

}  // namespace

TEST_CASE("pre_linear with identity dynamics and no disturbance returns the target") {
  ReachProblem p;
  p.model = linear_model("id", Mat::Identity(2, 2), Mat::Zero(2, 1));
  p.target = CZ(box2(-1, 1, 0, 2));
  p.inputs = CZ(Hyperbox(Vec::Constant(1, -1), Vec::Constant(1, 1)));
  p.disturbance = Zonotope(Mat::Zero(2, 0), Vec::Zero(2));
  p.safe = SafeSet({HPolytope(Mat(0, 2), Vec(0))});
  auto X = pre_linear(p.target, Mat::Identity(2, 2), Mat::Zero(2, 1), p);
  REQUIRE(X.has_value());
  for (const Vec& h : unit_directions(2, 32, 3)) CHECK(support(*X, h) == doctest::Approx(support(p.target, h)).epsilon(1e-8));
}

TEST_CASE("one linear step matches the exact polygon recursion") {
  ReachProblem p = integrator_with_scaled_disturbance(0.05, 1);
  LinearizedModel lin = linearize(p.model, Vec::Zero(3));
  auto X = pre_linear(p.target, lin.A, lin.B, p);
  REQUIRE(X.has_value());
  Polygon2 exact = exact_integrator(p)[1];
  REQUIRE(exact.size() >= 3);
  // every member of the computed set lies in the exact set
  MemberSampler s(*X, 11);
  for (const Vec& x : s.samples(300)) CHECK(polygon_contains(exact, x, 1e-7));
  // and nothing is lost: the difference here is exact, so the areas agree
  CHECK(polygon_area(polygon_vertices_2d(*X)) == doctest::Approx(polygon_area(exact)).epsilon(1e-6));
}

TEST_CASE("each point of a linear step has a witness input") {
  ReachProblem p = integrator_with_scaled_disturbance(0.05, 1);
  LinearizedModel lin = linearize(p.model, Vec::Zero(3));
  auto X = pre_linear(p.target, lin.A, lin.B, p);
  REQUIRE(X.has_value());
  // target minus W in H-form, then the admissible u interval for each row
  Mat H(4, 2);
  H << 1, 0, -1, 0, 0, 1, 0, -1;
  Vec a(4);
  a << 2, -1, 0.5, 0.5;
  HPolytope D = exact_hrep_diff(HPolytope(H, a), p.disturbance);
  MemberSampler s(*X, 5);
  for (const Vec& x : s.samples(200)) {
    double lo = -1.5, hi = 1.5;
    Vec Ax = lin.A * x;
    Vec Hb = D.H() * lin.B;
    for (Eigen::Index r = 0; r < D.num_rows(); ++r) {
      double slack = D.a()(r) - D.H().row(r).dot(Ax);
      if (std::abs(Hb(r)) < 1e-14) {
        CHECK(slack >= -1e-7);
      } else if (Hb(r) > 0) {
        hi = std::min(hi, slack / Hb(r));
      } else {
        lo = std::max(lo, slack / Hb(r));
      }
    }
    CHECK(lo <= hi + 1e-7);
  }
}

TEST_CASE("a disturbance wider than the target empties the step") {
  ReachProblem p = double_integrator_problem(1);
  p.disturbance = Zonotope(Mat::Identity(2, 2) * 0.8, Vec::Zero(2));
  LinearizedModel lin = linearize(p.model, Vec::Zero(3));
  CHECK_FALSE(pre_linear(p.target, lin.A, lin.B, p).has_value());
}

TEST_CASE("published integrator data collapses after two steps, like the exact recursion") {
  ReachProblem p = double_integrator_problem(5);
  std::vector<Polygon2> exact = exact_integrator(p);
  REQUIRE(exact[1].size() >= 3);
  REQUIRE(exact[2].size() >= 3);
  CHECK(exact[3].empty());
  ReachResult r = run(p);
  CHECK(r.termination == Termination::EmptySet);
  CHECK(r.steps.size() == 3);
}

TEST_CASE("long linear recursion stays inside the exact sets") {
  ReachProblem p = integrator_with_scaled_disturbance(0.05, 30);
  std::vector<Polygon2> exact = exact_integrator(p);
  ReachResult r = run(p);
  REQUIRE(r.termination == Termination::HorizonReached);
  REQUIRE(r.steps.size() == 31);
  for (int k : {1, 10, 30}) {
    const CZ& X = r.steps[k].front();
    MemberSampler s(X, 100 + k);
    for (const Vec& x : s.samples(100)) CHECK(polygon_contains(exact[k], x, 1e-6));
    double area = polygon_area(polygon_vertices_2d(X));
    CHECK(area <= polygon_area(exact[k]) * (1 + 1e-6));
    CHECK(area > 0.5 * polygon_area(exact[k]));
  }
}

TEST_CASE("pre_xu with singleton disturbance and error is the lifted preimage") {
  // with W = L = {0}, the set is {(x,u) : A x + B u in X, u in U} intersected with the safe set
  Mat A(2, 2), B(2, 1);
  A << 1, 0.1, 0, 1;
  B << 0, 0.1;
  CZ X(box2(-1, 1, -1, 1));
  CZ U(Hyperbox(Vec::Constant(1, -1), Vec::Constant(1, 1)));
  Zonotope zero(Mat::Zero(2, 0), Vec::Zero(2));
  HPolytope safe(Mat::Identity(2, 2), v2(0.5, 10));
  auto Z = pre_xu(X, A, B, U, zero, zero, &safe);
  auto Zl = pre_xu_lifted(X, A, B, U, zero, zero, &safe);
  REQUIRE(Z.has_value());
  REQUIRE(Zl.has_value());
  for (const Vec& h : unit_directions(3, 40, 9)) CHECK(support(*Z, h) == doctest::Approx(support(*Zl, h)).epsilon(1e-7));
  MemberSampler s(*Z, 2);
  for (const Vec& z : s.samples(200)) {
    Vec x = z.head(2), u = z.tail(1);
    CHECK(std::abs(u(0)) <= 1 + 1e-7);
    CHECK(x(0) <= 0.5 + 1e-7);
    Vec y = A * x + B * u;
    CHECK(y.cwiseAbs().maxCoeff() <= 1 + 1e-7);
  }
}

TEST_CASE("pre_xu samples of the Dubins car satisfy the linearized predicate") {
  ReachProblem p = dubins_halfspace_problem(1);
  Vec z_star = Vec::Zero(5);
  z_star(3) = 0.5;
  LinearizedModel lin = linearize(p.model, z_star);
  Zonotope L(Hyperbox(-p.L_bar, p.L_bar));
  auto Z = pre_xu(p.target, lin.A, lin.B, p.inputs, p.disturbance, L);
  REQUIRE(Z.has_value());
  CZ D = minkdiff_two_step(p.target, minkowski_sum(L, p.disturbance)).difference;
  MemberSampler s(*Z, 4);
  MembershipOracle inD(D);
  MembershipOracle inU(p.inputs);
  for (const Vec& z : s.samples(100)) {
    Vec x = z.head(3), u = z.tail(2);
    CHECK(inU.contains(u, 1e-7));
    CHECK(inD.contains(lin.A * x + lin.B * u, 1e-6));
  }
  CZ X = project_x(*Z, 3);
  CHECK(X.dim() == 3);
  CHECK(X.num_generators() == Z->num_generators());
}

TEST_CASE("scaling on a linear model equals pre_linear") {
  ReachProblem p = integrator_with_scaled_disturbance(0.05, 1);
  ScalingStep st = scaling_brs_step(p.target, p);
  LinearizedModel lin = linearize(p.model, Vec::Zero(3));
  auto X = pre_linear(p.target, lin.A, lin.B, p);
  REQUIRE(st.set.has_value());
  REQUIRE(X.has_value());
  for (const Vec& h : unit_directions(2, 32, 5)) CHECK(support(*st.set, h) == doctest::Approx(support(*X, h)).epsilon(1e-7));
}

TEST_CASE("scaling on the Dubins car converges and respects the error bound") {
  ReachProblem p = dubins_halfspace_problem(3);
  ReachResult r = run(p);
  REQUIRE(r.termination == Termination::HorizonReached);
  for (std::size_t k = 1; k < r.steps.size(); ++k) {
    CHECK(r.diagnostics[k].scale_iterations <= 10);
    for (const PieceOrigin& o : r.origins[k]) {
      Hyperbox Lb = interval_closure(o.L);
      for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(o.remainder.lower()(i) >= Lb.lower()(i) - 1e-12);
        CHECK(o.remainder.upper()(i) <= Lb.upper()(i) + 1e-12);
      }
    }
  }
}

TEST_CASE("split selection") {
  SUBCASE("a single generator is the only choice") {
    ReachProblem p = dubins_obstacle_problem(1);
    Mat G = Mat::Zero(3, 1);
    G(2, 0) = 0.3;
    CHECK(select_split_generator(CZ(G, Vec::Zero(3)), p) == 0);
  }
  SUBCASE("a box elongated in heading splits the heading") {
    ReachProblem p = dubins_obstacle_problem(1);
    Mat G = Mat::Zero(3, 3);
    G(0, 0) = 0.01;
    G(1, 1) = 0.01;
    G(2, 2) = 0.6;
    CHECK(select_split_generator(CZ(G, Vec::Zero(3)), p) == 2);
  }
  SUBCASE("zero columns are never chosen") {
    ReachProblem p = dubins_obstacle_problem(1);
    Mat G = Mat::Zero(3, 4);
    G(0, 1) = 0.05;
    G(2, 3) = 0.5;
    Eigen::Index j = select_split_generator(CZ(G, Vec::Zero(3)), p);
    CHECK((j == 1 || j == 3));
  }
}

TEST_CASE("farthest point sampling") {
  std::vector<CZ> sets;
  for (double x : {0.0, 1.0, 10.0}) sets.emplace_back(box2(x - 0.125, x + 0.125, -0.125, 0.125));
  CHECK(farthest_point_sample(sets, 2) == std::vector<std::size_t>{0, 2});
  CHECK(farthest_point_sample(sets, 5) == std::vector<std::size_t>{0, 1, 2});
  CHECK(farthest_point_sample(sets, 2) == farthest_point_sample(sets, 2));
  CHECK_THROWS_AS(farthest_point_sample(sets, 0), std::invalid_argument);
}

TEST_CASE("splitting on a linear model reduces to scaling") {
  ReachProblem p = integrator_with_scaled_disturbance(0.05, 3);
  ReachProblem q = p;
  q.method = Method::Splitting;
  ReachResult a = run(p), b = run(q);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t k = 1; k < a.steps.size(); ++k) {
    REQUIRE(b.steps[k].size() == 1);
    for (const Vec& h : unit_directions(2, 16, 8))
      CHECK(support(b.steps[k][0], h) == doctest::Approx(support(a.steps[k][0], h)).epsilon(1e-7));
  }
}

TEST_CASE("splitting around the obstacle keeps both sides and certifies samples") {
  ReachProblem p = dubins_obstacle_problem(4);
  ReachResult r = run(p);
  REQUIRE(r.termination == Termination::HorizonReached);
  Hyperbox ob = dubins_obstacle();
  bool above = false, below = false;
  for (std::size_t k = 1; k < r.steps.size(); ++k) {
    CHECK(static_cast<int>(r.steps[k].size()) <= p.max_branches);
    for (const CZ& S : r.steps[k]) {
      Hyperbox b = interval_closure(S);
      bool overlaps_x = b.lower()(0) < ob.upper()(0) && b.upper()(0) > ob.lower()(0);
      if (overlaps_x && b.lower()(1) >= ob.upper()(1) - 1e-9) above = true;
      if (overlaps_x && b.upper()(1) <= ob.lower()(1) + 1e-9) below = true;
    }
  }
  CHECK(above);
  CHECK(below);

  // sampled members reach their parent's target under some admissible input
  const std::size_t k = r.steps.size() - 1;
  Zonotope W = p.disturbance;
  int checked = 0;
  for (std::size_t i = 0; i < r.steps[k].size() && checked < 40; i += 4) {
    const PieceOrigin& o = r.origins[k][i];
    CertificateChecker cert(p.model, o.z_star, o.target, p.inputs, W, o.L);
    REQUIRE_FALSE(cert.vacuous());
    MemberSampler s(r.steps[k][i], 30 + i);
    for (const Vec& x : s.samples(5)) {
      CHECK(cert.check(x).certified);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("run edge cases") {
  ReachProblem p = double_integrator_problem(0);
  ReachResult r = run(p);
  CHECK(r.steps.size() == 1);
  CHECK(r.termination == Termination::HorizonReached);

  ReachProblem bad = double_integrator_problem(1);
  bad.alpha = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = double_integrator_problem(1);
  bad.horizon = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = dubins_obstacle_problem(1);
  bad.L_bar = Vec::Constant(2, 0.1);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = dubins_obstacle_problem(1);
  bad.max_branches = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
