#include "simplex_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace czreach::lp::detail {

namespace {
constexpr double kOptTol = 1e-9;
constexpr double kTieTol = 1e-12;
constexpr double kHarrisTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr int kDegenerateRunForBland = 30;
constexpr int kMinRefactorPeriod = 100;
constexpr int kMaxOptimalRechecks = 3;
// short pivot sequences do not accumulate enough drift to need a recheck
constexpr int kMinPivotsForRecheck = 25;

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
}  // namespace

void Tableau::reset(int rows, int cols) {
  rows_ = rows;
  cols_ = cols;
  stride_ = cols + 1;
  data_.assign(static_cast<size_t>(rows) * stride_, 0.0);
  d_.assign(cols, 0.0);
  upper.assign(cols, kInf);
  basis.assign(rows, -1);
  row_of.assign(cols, -1);
  flipped.assign(cols, 0);
  blocked.assign(cols, 0);
  nz_.reserve(stride_);
  z_ = 0.0;
  cost_.clear();
  orig_.clear();
  have_orig_ = false;
}

void Tableau::snapshot() {
  orig_ = data_;
  have_orig_ = true;
}

bool Tableau::refactor() {
  if (!have_orig_ || rows_ == 0) return true;
  Eigen::Map<const RowMat> orig(orig_.data(), rows_, stride_);
  RowMat M = orig;
  for (int j = 0; j < cols_; ++j) {
    if (!flipped[j]) continue;
    M.col(cols_) -= upper[j] * M.col(j);
    M.col(j) = -M.col(j);
  }
  Eigen::MatrixXd Bm(rows_, rows_);
  for (int i = 0; i < rows_; ++i) Bm.col(i) = M.col(basis[i]);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Bm);
  if (!lu.isInvertible()) return false;
  RowMat T = lu.solve(M);
  if (!T.allFinite()) return false;
  for (int i = 0; i < rows_; ++i) {
    double* ri = row(i);
    for (int j = 0; j <= cols_; ++j) {
      double v = T(i, j);
      ri[j] = std::abs(v) < kDropTol ? 0.0 : v;
    }
  }
  for (int i = 0; i < rows_; ++i) {
    int b = basis[i];
    for (int k = 0; k < rows_; ++k) row(k)[b] = 0.0;
    row(i)[b] = 1.0;
  }
  if (!cost_.empty()) set_costs(std::vector<double>(cost_));
  return true;
}

void Tableau::set_costs(const std::vector<double>& cost) {
  cost_ = cost;
  z_ = 0.0;
  for (int j = 0; j < cols_; ++j) {
    d_[j] = flipped[j] ? -cost[j] : cost[j];
    if (flipped[j]) z_ += cost[j] * upper[j];
  }
  for (int i = 0; i < rows_; ++i) {
    int v = basis[i];
    double cb = flipped[v] ? -cost[v] : cost[v];
    if (cb == 0.0) continue;
    const double* ri = row(i);
    for (int j = 0; j < cols_; ++j)
      if (ri[j] != 0.0) d_[j] -= cb * ri[j];
    z_ += cb * ri[cols_];
  }
  for (int i = 0; i < rows_; ++i) d_[basis[i]] = 0.0;
}

void Tableau::pivot(int r, int q) {
  double* pr = row(r);
  double inv = 1.0 / pr[q];
  nz_.clear();
  for (int j = 0; j <= cols_; ++j) {
    if (pr[j] == 0.0) continue;
    pr[j] *= inv;
    nz_.push_back(j);
  }
  pr[q] = 1.0;
  for (int i = 0; i < rows_; ++i) {
    if (i == r) continue;
    double* ri = row(i);
    double f = ri[q];
    if (f == 0.0) continue;
    for (int j : nz_) {
      double v = ri[j] - f * pr[j];
      ri[j] = std::abs(v) < kDropTol ? 0.0 : v;
    }
    ri[q] = 0.0;
  }
  double f = d_[q];
  if (f != 0.0) {
    for (int j : nz_) {
      if (j == cols_)
        z_ += f * pr[j];
      else
        d_[j] -= f * pr[j];
    }
  }
  d_[q] = 0.0;
  row_of[basis[r]] = -1;
  basis[r] = q;
  row_of[q] = r;
}

void Tableau::flip_nonbasic(int q) {
  double u = upper[q];
  for (int i = 0; i < rows_; ++i) {
    double* ri = row(i);
    if (ri[q] == 0.0) continue;
    ri[cols_] -= ri[q] * u;
    ri[q] = -ri[q];
  }
  z_ += d_[q] * u;
  d_[q] = -d_[q];
  flipped[q] ^= 1;
}

void Tableau::complement_basic(int r) {
  double* pr = row(r);
  int v = basis[r];
  for (int j = 0; j < cols_; ++j)
    if (j != v && pr[j] != 0.0) pr[j] = -pr[j];
  pr[cols_] = upper[v] - pr[cols_];
  flipped[v] ^= 1;
}

double Tableau::value(int j) const {
  double v = row_of[j] >= 0 ? rhs(row_of[j]) : 0.0;
  return flipped[j] ? upper[j] - v : v;
}

Status Tableau::optimize(long& iters, long max_iters) {
  if (!have_orig_) snapshot();
  const int period = std::max(kMinRefactorPeriod, rows_);
  int since_refactor = 0;
  int rechecks = 0;
  int degenerate_run = 0;
  bool bland = false;
  for (;;) {
    int q = -1;
    double best = -kOptTol;
    for (int j = 0; j < cols_; ++j) {
      if (blocked[j] || row_of[j] >= 0) continue;
      if (d_[j] < best) {
        q = j;
        if (bland) break;
        best = d_[j];
      }
    }
    if (q < 0) {
      // confirm optimality on a freshly computed tableau
      if (since_refactor < kMinPivotsForRecheck || rechecks >= kMaxOptimalRechecks || !refactor()) return Status::Optimal;
      since_refactor = 0;
      ++rechecks;
      continue;
    }
    if (++iters > max_iters)
      throw IterationLimitError("simplex iteration limit exceeded");

    // two-pass (Harris) ratio test: bound the step with a small feasibility
    // allowance, then take the largest pivot among the rows that block it
    double t_relaxed = upper[q];
    for (int i = 0; i < rows_; ++i) {
      const double a = row(i)[q];
      const double x = rhs(i);
      if (a > kPivotTol) {
        t_relaxed = std::min(t_relaxed, (std::max(x, 0.0) + kHarrisTol) / a);
      } else if (a < -kPivotTol && upper[basis[i]] < kInf) {
        t_relaxed = std::min(t_relaxed, (std::max(upper[basis[i]] - x, 0.0) + kHarrisTol) / -a);
      }
    }
    double t = upper[q];
    int r = -1;
    bool leave_upper = false;
    if (!(upper[q] <= t_relaxed)) {
      double r_abs = 0.0;
      for (int i = 0; i < rows_; ++i) {
        const double a = row(i)[q];
        const double x = rhs(i);
        double ti;
        if (a > kPivotTol) {
          ti = std::max(x, 0.0) / a;
        } else if (a < -kPivotTol && upper[basis[i]] < kInf) {
          ti = std::max(upper[basis[i]] - x, 0.0) / -a;
        } else {
          continue;
        }
        if (ti > t_relaxed) continue;
        if (std::abs(a) > r_abs || (bland && std::abs(a) == r_abs && basis[i] < basis[r])) {
          r_abs = std::abs(a);
          r = i;
          t = ti;
          leave_upper = a < 0;
        }
      }
    }
    if (r < 0 && t == kInf) return Status::Unbounded;
    if (r < 0) {
      flip_nonbasic(q);
    } else {
      if (leave_upper) complement_basic(r);
      pivot(r, q);
    }
    if (++since_refactor >= period) {
      refactor();
      since_refactor = 0;
    }
    if (t <= kTieTol) {
      if (++degenerate_run >= kDegenerateRunForBland) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
  }
}

}  // namespace czreach::lp::detail
