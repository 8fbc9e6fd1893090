#include "doctest.h"

#include "czreach/lp.hpp"

#include <random>

using namespace czreach::lp;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_CASE("bounded scalar") {
  LinearProgram lp(1);
  lp.objective << 1.0;
  lp.lower << 3.0;
  lp.upper << 10.0;
  Solution s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.x(0) == doctest::Approx(3.0));
  CHECK(s.objective_value == doctest::Approx(3.0));
}

TEST_CASE("contradictory equalities") {
  LinearProgram lp(1);
  lp.eq_matrix = MatrixXd::Ones(2, 1);
  lp.eq_rhs = VectorXd(2);
  lp.eq_rhs << 1.0, 2.0;
  CHECK(solve(lp).status == Status::Infeasible);
}

TEST_CASE("simplex corner") {
  LinearProgram lp(2);
  lp.objective << -1.0, -1.0;
  lp.ineq_matrix = MatrixXd::Ones(1, 2);
  lp.ineq_rhs = VectorXd::Ones(1);
  lp.lower.setZero();
  Solution s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective_value == doctest::Approx(-1.0));
  CHECK(max_violation(lp, s.x) <= kFeasibilityTol);
}

TEST_CASE("unbounded ray") {
  LinearProgram lp(2);
  lp.objective << -1.0, 0.0;
  lp.ineq_matrix = MatrixXd(1, 2);
  lp.ineq_matrix << -1.0, 1.0;
  lp.ineq_rhs = VectorXd::Zero(1);
  lp.lower.setZero();
  CHECK(solve(lp).status == Status::Unbounded);
}

TEST_CASE("free variables and upper-bounded variables") {
  LinearProgram lp(2);
  // min x - y  s.t. x + y = 1, x free, y <= 4
  lp.objective << 1.0, -1.0;
  lp.eq_matrix = MatrixXd::Ones(1, 2);
  lp.eq_rhs = VectorXd::Ones(1);
  lp.upper(1) = 4.0;
  Solution s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.x(0) == doctest::Approx(-3.0));
  CHECK(s.x(1) == doctest::Approx(4.0));
}

TEST_CASE("dimension mismatch") {
  LinearProgram lp(2);
  lp.eq_matrix = MatrixXd::Ones(1, 3);
  lp.eq_rhs = VectorXd::Ones(1);
  CHECK_THROWS_AS(solve(lp), DimensionError);
}

TEST_CASE("iteration budget raises a distinct error") {
  LinearProgram lp(2);
  lp.objective << -1.0, -1.0;
  lp.ineq_matrix = MatrixXd::Ones(1, 2);
  lp.ineq_rhs = VectorXd::Ones(1);
  lp.lower.setZero();
  SolverOptions opts;
  opts.iteration_factor = 0;
  CHECK_THROWS_AS(solve(lp, opts), IterationLimitError);
}

TEST_CASE("degenerate instance that cycles under naive pricing") {
  LinearProgram lp(4);
  lp.objective << -0.75, 150.0, -0.02, 6.0;
  lp.ineq_matrix = MatrixXd(3, 4);
  lp.ineq_matrix << 0.25, -60.0, -0.04, 9.0,  //
      0.5, -90.0, -0.02, 3.0,                   //
      0.0, 0.0, 1.0, 0.0;
  lp.ineq_rhs = VectorXd(3);
  lp.ineq_rhs << 0.0, 0.0, 1.0;
  lp.lower.setZero();
  Solution s = solve(lp);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.objective_value == doctest::Approx(-0.05));
}

namespace {

// brute-force 2-variable LP: enumerate every pairwise line intersection
// among constraints and bounds, keep the best feasible one
bool brute_force_2d(const MatrixXd& H, const VectorXd& a, const VectorXd& c, double& best) {
  const int m = static_cast<int>(H.rows());
  bool found = false;
  best = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Eigen::Matrix2d M;
      M << H.row(i), H.row(j);
      if (std::abs(M.determinant()) < 1e-9) continue;
      Eigen::Vector2d x = M.inverse() * Eigen::Vector2d(a(i), a(j));
      if (((H * x - a).array() > 1e-8).any()) continue;
      double v = c.dot(x);
      if (!found || v < best) best = v;
      found = true;
    }
  return found;
}

}  // namespace

TEST_CASE("random 2-D programs agree with vertex enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int m = 3 + trial % 6;
    MatrixXd H(m + 4, 2);
    VectorXd a(m + 4);
    for (int i = 0; i < m; ++i) {
      H.row(i) << U(rng), U(rng);
      a(i) = U(rng) + 0.3;
    }
    // box keeps everything bounded
    H.bottomRows(4) << 1, 0, -1, 0, 0, 1, 0, -1;
    a.tail(4).setConstant(5.0);
    VectorXd c(2);
    c << U(rng), U(rng);

    LinearProgram lp(2);
    lp.objective = c;
    lp.ineq_matrix = H.topRows(m);
    lp.ineq_rhs = a.head(m);
    lp.lower.setConstant(-5.0);
    lp.upper.setConstant(5.0);
    Solution s = solve(lp);
    double best;
    bool feasible = brute_force_2d(H, a, c, best);
    if (!feasible) {
      CHECK(s.status == Status::Infeasible);
      continue;
    }
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.objective_value == doctest::Approx(best).epsilon(1e-7));
    CHECK(max_violation(lp, s.x) <= kFeasibilityTol);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("random equality-constrained programs satisfy KKT-free checks") {
  // compare against a tiny brute force over basic solutions of a 2x4 system
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    MatrixXd A(2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) A(i, j) = U(rng);
    VectorXd x0(4);
    for (int j = 0; j < 4; ++j) x0(j) = 0.5 * U(rng);
    VectorXd b = A * x0;
    VectorXd c(4);
    for (int j = 0; j < 4; ++j) c(j) = U(rng);

    LinearProgram lp(4);
    lp.objective = c;
    lp.eq_matrix = A;
    lp.eq_rhs = b;
    lp.lower.setConstant(-1.0);
    lp.upper.setConstant(1.0);
    Solution s = solve(lp);
    REQUIRE(s.status == Status::Optimal);
    CHECK(max_violation(lp, s.x) <= kFeasibilityTol);

    // vertices: two free coordinates solve the system, the other two sit at bounds
    double best = 1e300;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) {
        Eigen::Matrix2d M;
        M << A.col(p), A.col(q);
        if (std::abs(M.determinant()) < 1e-9) continue;
        int others[2], k = 0;
        for (int j = 0; j < 4; ++j)
          if (j != p && j != q) others[k++] = j;
        for (int mask = 0; mask < 4; ++mask) {
          VectorXd x = VectorXd::Zero(4);
          x(others[0]) = (mask & 1) ? 1.0 : -1.0;
          x(others[1]) = (mask & 2) ? 1.0 : -1.0;
          Eigen::Vector2d r = b - A.col(others[0]) * x(others[0]) - A.col(others[1]) * x(others[1]);
          Eigen::Vector2d y = M.inverse() * r;
          x(p) = y(0);
          x(q) = y(1);
          if ((x.array().abs() > 1.0 + 1e-9).any()) continue;
          best = std::min(best, c.dot(x));
        }
      }
    CHECK(s.objective_value == doctest::Approx(best).epsilon(1e-7));
  }
}
