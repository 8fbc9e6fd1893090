#pragma once

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace czreach::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// tolerances shared by the set layer
inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kInternalFeasTol = 1e-9;
inline constexpr double kPivotTol = 1e-10;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// raised when the simplex exceeds its pivot budget; distinct from infeasibility
class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status s);

// minimize c'x  s.t.  Aeq x = beq,  Aineq x <= bineq,  lower <= x <= upper
// Bounds default to free variables; use -kInf / kInf for missing bounds.
struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd eq_matrix;
  Eigen::VectorXd eq_rhs;
  Eigen::MatrixXd ineq_matrix;
  Eigen::VectorXd ineq_rhs;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  LinearProgram() = default;
  explicit LinearProgram(Eigen::Index num_vars);

  Eigen::Index num_vars() const { return objective.size(); }
  void validate() const;
};

struct Solution {
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective_value = 0.0;
  long iterations = 0;
};

struct SolverOptions {
  // pivot budget is iteration_factor * (rows + cols) of the standard form
  long iteration_factor = 50;
};

Solution solve(const LinearProgram& lp, const SolverOptions& opts = {});

// max violation of equality, inequality and bound constraints at x
double max_violation(const LinearProgram& lp, const Eigen::VectorXd& x);

}  // namespace czreach::lp
