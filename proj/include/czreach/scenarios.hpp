#pragma once

#include "czreach/brs.hpp"
#include "czreach/mink_diff.hpp"

namespace czreach {

// Built-in problem instances shared by the tests, the acceptance suite and the
// shipped configs.

// 2-D double integrator, box target at [1.5; 0], one safe polytope
ReachProblem double_integrator_problem(int horizon = 100);

// Dubins car driving around a box obstacle; four halfspace safe pieces
ReachProblem dubins_obstacle_problem(int horizon = 10);
// Dubins car with a single halfspace safe set, scaling method
ReachProblem dubins_halfspace_problem(int horizon = 10);
// the obstacle removed by the safe pieces above, as a box
Hyperbox dubins_obstacle();

// 10-D tank chain, splitting, target [3.9, 4.1]^10
ReachProblem tank_problem(int horizon = 20);

// 10-D linear placeholder with the box sets of the high-dimensional example
ReachProblem linear_10d_problem(int horizon = 10);

// 2-D constrained zonotope and shrink factors whose two-step difference leaves a gap
struct GapExample {
  CZ minuend;
  MinOutSolution shrink;
};
GapExample gap_example();

}  // namespace czreach
