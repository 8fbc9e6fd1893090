#pragma once

// Dense bounded-variable primal simplex kernel shared by the LP front end and
// the point-membership oracle. Columns carry an upper bound (possibly infinite)
// and a lower bound of zero; upper bounds are handled by complementation.

#include "czreach/lp.hpp"

#include <vector>

namespace czreach::lp::detail {

class Tableau {
 public:
  void reset(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double* row(int i) { return data_.data() + static_cast<size_t>(i) * stride_; }
  const double* row(int i) const { return data_.data() + static_cast<size_t>(i) * stride_; }
  double& at(int i, int j) { return row(i)[j]; }
  double& rhs(int i) { return row(i)[cols_]; }
  double rhs(int i) const { return row(i)[cols_]; }

  // set costs in the original column orientation and rebuild reduced costs
  void set_costs(const std::vector<double>& cost);

  // returns Optimal or Unbounded; throws IterationLimitError past max_iters
  Status optimize(long& iters, long max_iters);

  void pivot(int r, int q);

  // value of column j in its original orientation
  double value(int j) const;

  // recompute the tableau from the initial rows and the current basis;
  // false when the basis matrix is numerically singular
  bool refactor();

  double objective() const { return z_; }

  std::vector<double> upper;
  std::vector<int> basis;
  std::vector<int> row_of;
  std::vector<char> flipped;
  std::vector<char> blocked;

 private:
  void flip_nonbasic(int q);
  void complement_basic(int r);
  void snapshot();

  int rows_ = 0;
  int cols_ = 0;
  int stride_ = 0;
  std::vector<double> data_;
  std::vector<double> d_;
  std::vector<int> nz_;
  double z_ = 0.0;
  std::vector<double> cost_;
  std::vector<double> orig_;  // rows as built, before any pivot
  bool have_orig_ = false;
};

}  // namespace czreach::lp::detail
