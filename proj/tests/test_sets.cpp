#include "doctest.h"

#include "czreach/io.hpp"
#include "czreach/sample.hpp"
#include "czreach/sets.hpp"

#include <random>

using namespace czreach;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

CZ unit_box2() { return CZ(Mat::Identity(2, 2), Vec::Zero(2)); }

// same set, but with a vacuous constraint row so every query goes through the LP path
CZ with_vacuous_row(const CZ& S) {
  Mat A = Mat::Zero(S.num_constraints() + 1, S.num_generators());
  A.topRows(S.num_constraints()) = S.constraint_matrix();
  Vec b = Vec::Zero(S.num_constraints() + 1);
  b.head(S.num_constraints()) = S.constraint_vector();
  return CZ(S.generators(), S.center(), A, b);
}

CZ random_cz(std::mt19937_64& rng, int n, int N, int m) {
  std::normal_distribution<double> g;
  Mat G(n, N), A(m, N);
  Vec c(n);
  for (int i = 0; i < n; ++i) c(i) = g(rng);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < N; ++j) G(i, j) = g(rng);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < N; ++j) A(i, j) = g(rng);
  // b from a strictly interior parameter keeps the set nonempty
  Vec t(N);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int j = 0; j < N; ++j) t(j) = u(rng);
  return CZ(G, c, A, A * t);
}

}  // namespace

TEST_CASE("constructors validate dimensions") {
  CHECK_THROWS_AS(CZ(Mat::Identity(2, 2), Vec::Zero(3)), DimensionError);
  CHECK_THROWS_AS(CZ(Mat::Identity(2, 2), Vec::Zero(2), Mat::Ones(1, 3), Vec::Ones(1)), DimensionError);
  CHECK_THROWS_AS(Hyperbox(v2(1, 0), v2(0, 1)), DimensionError);
  CHECK_THROWS_AS(SafeSet(std::vector<HPolytope>{}), DimensionError);
  CHECK_THROWS_AS(linear_map(Mat::Identity(3, 3), unit_box2()), DimensionError);
}

TEST_CASE("singleton from an equality constraint") {
  Mat A(1, 2);
  A << 1, 1;
  CZ S(Mat::Identity(2, 2), Vec::Zero(2), A, Vec::Constant(1, 2.0));
  CHECK(contains_point(S, v2(1, 1)));
  CHECK_FALSE(contains_point(S, v2(1, 0.9)));
  Hyperbox box = interval_closure(S);
  CHECK(box.lower()(0) == doctest::Approx(1.0));
  CHECK(box.upper()(0) == doctest::Approx(1.0));
  CHECK(box.lower()(1) == doctest::Approx(1.0));
  CHECK(box.upper()(1) == doctest::Approx(1.0));
}

TEST_CASE("infeasible constraints are empty") {
  Mat A(1, 2);
  A << 1, 1;
  CZ S(Mat::Identity(2, 2), Vec::Zero(2), A, Vec::Constant(1, 3.0));
  CHECK(is_empty(S));
  CHECK_THROWS_AS(support(S, v2(1, 0)), EmptySetError);
  CHECK_FALSE(is_empty(unit_box2()));
}

TEST_CASE("halfspace intersection") {
  CZ S = intersect_halfspace(unit_box2(), v2(1, 0), 0.5);
  CHECK(support(S, v2(1, 0)) == doctest::Approx(0.5));
  CHECK(support(S, v2(-1, 0)) == doctest::Approx(1.0));
  CHECK(support(S, v2(0, 1)) == doctest::Approx(1.0));
  CHECK(contains_point(S, v2(0.5, 1.0)));
  CHECK_FALSE(contains_point(S, v2(0.6, 0.0)));
  CHECK_THROWS_AS(intersect_halfspace(unit_box2(), v2(1, 0), -2.0), EmptyIntersectionError);
}

TEST_CASE("intersect_polytope skips redundant rows and detects emptiness") {
  HPolytope far(Mat::Identity(2, 2), v2(5, 5));
  auto same = intersect_polytope(unit_box2(), far);
  REQUIRE(same.has_value());
  CHECK(same->num_constraints() == 0);
  HPolytope cut(Mat(v2(1, 1).transpose()), Vec::Constant(1, 0.0));
  auto half = intersect_polytope(unit_box2(), cut);
  REQUIRE(half.has_value());
  CHECK(support(*half, v2(1, 1)) == doctest::Approx(0.0).epsilon(1e-9));
  HPolytope away(Mat(v2(1, 0).transpose()), Vec::Constant(1, -3.0));
  CHECK_FALSE(intersect_polytope(unit_box2(), away).has_value());
}

TEST_CASE("zonotope support matches the LP path") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    CZ Z = random_cz(rng, 3, 5, 0);
    CZ Zl = with_vacuous_row(Z);
    Vec h(3);
    for (int i = 0; i < 3; ++i) h(i) = g(rng);
    CHECK(support(Zl, h) == doctest::Approx(support(Z, h)).epsilon(1e-9));
  }
}

TEST_CASE("support of Minkowski sums and linear maps") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 40; ++t) {
    CZ S1 = random_cz(rng, 2, 5, 2);
    CZ S2 = random_cz(rng, 2, 4, 1);
    Mat M(2, 2);
    M << g(rng), g(rng), g(rng), g(rng);
    Vec h = v2(g(rng), g(rng));
    CHECK(support(minkowski_sum(S1, S2), h) ==
          doctest::Approx(support(S1, h) + support(S2, h)).epsilon(1e-8));
    CHECK(support(linear_map(M, S1), h) == doctest::Approx(support(S1, M.transpose() * h)).epsilon(1e-8));
  }
}

TEST_CASE("intersection membership agrees with both operands") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    CZ S1 = random_cz(rng, 2, 4, 1);
    CZ S2 = translate(random_cz(rng, 2, 4, 0), Vec::Zero(2));
    CZ I = intersect(S1, S2);
    Hyperbox box = Hyperbox::hull(interval_closure(S1), interval_closure(S2));
    std::vector<Vec> pts = sample_box(box, 200, rng);
    for (const Vec& x : pts) {
      bool in1 = membership_residual(S1, x) <= 1e-9;
      bool in2 = membership_residual(S2, x) <= 1e-9;
      double r = membership_residual(I, x);
      if (in1 && in2) CHECK(r <= 1e-7);
      // clearly outside either operand
      if (membership_residual(S1, x) > 1e-4 || membership_residual(S2, x) > 1e-4) CHECK(r > 1e-7);
    }
  }
}

TEST_CASE("product and split") {
  CZ P = product(unit_box2(), CZ(Mat::Identity(1, 1) * 2.0, Vec::Ones(1)));
  CHECK(P.dim() == 3);
  Vec x(3);
  x << 1, -1, 3;
  CHECK(contains_point(P, x));
  x(2) = 3.5;
  CHECK_FALSE(contains_point(P, x));

  auto [left, right] = split(unit_box2(), 0);
  CHECK(support(left, v2(1, 0)) == doctest::Approx(1.0));
  CHECK(support(left, v2(-1, 0)) == doctest::Approx(0.0));
  CHECK(support(right, v2(1, 0)) == doctest::Approx(0.0));
  CHECK(support(right, v2(-1, 0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(split(unit_box2(), 5), DimensionError);
}

TEST_CASE("sampled members belong to the set") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    CZ S = random_cz(rng, 3, 7, 2);
    MemberSampler sampler(S, 100 + t);
    MembershipOracle oracle(S);
    for (const Vec& x : sampler.samples(200)) CHECK(oracle.residual(x) <= 1e-7);
  }
}

TEST_CASE("JSON round trip") {
  std::mt19937_64 rng(17);
  CZ S = random_cz(rng, 2, 3, 1);
  CZ back = cz_from_json(to_json(S), "");
  CHECK((back.generators() - S.generators()).norm() == 0.0);
  CHECK((back.constraint_vector() - S.constraint_vector()).norm() == 0.0);
  CZ box = cz_from_json(json::parse(R"({"lower":[0,1],"upper":[2,3]})"), "/target");
  CHECK(support(box, v2(1, 1)) == doctest::Approx(5.0));
  CHECK_THROWS_AS(cz_from_json(json::parse(R"({"G":[[1]],"c":[0],"bogus":1})"), "/x"), SchemaError);
  try {
    cz_from_json(json::parse(R"({"G":[[1,2],[3]],"c":[0,0]})"), "/target");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.path() == "/target/G/1");
  }
}

TEST_CASE("H-polytope queries") {
  HPolytope P(Hyperbox(v2(-1, -2), v2(3, 4)));
  Hyperbox b = interval_closure(P);
  CHECK(b.lower()(1) == doctest::Approx(-2.0));
  CHECK(b.upper()(0) == doctest::Approx(3.0));
  CHECK_FALSE(is_empty(P));
  HPolytope half(Mat(v2(1, 0).transpose()), Vec::Zero(1));
  CHECK_THROWS_AS(support(half, v2(-1, 0)), UnboundedSetError);
}

TEST_CASE("a reused membership oracle agrees with fresh queries") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int t = 0; t < 10; ++t) {
    CZ S = random_cz(rng, 2 + t % 3, 8, t % 3);
    MembershipOracle oracle(S);
    Hyperbox b = interval_closure(S);
    for (int k = 0; k < 200; ++k) {
      Vec x = b.center();
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += 0.6 * b.half_widths()(i) * g(rng);
      double fresh = membership_residual(S, x);
      double reused = oracle.residual(x);
      CHECK(reused == doctest::Approx(fresh).epsilon(1e-6).scale(1.0));
    }
  }
}
