#include "czreach/lp.hpp"

#include "simplex_core.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace czreach::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "optimal";
    case Status::Infeasible:
      return "infeasible";
    case Status::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

LinearProgram::LinearProgram(Eigen::Index num_vars)
    : objective(Eigen::VectorXd::Zero(num_vars)),
      eq_matrix(0, num_vars),
      eq_rhs(0),
      ineq_matrix(0, num_vars),
      ineq_rhs(0),
      lower(Eigen::VectorXd::Constant(num_vars, -kInf)),
      upper(Eigen::VectorXd::Constant(num_vars, kInf)) {}

void LinearProgram::validate() const {
  const Eigen::Index n = objective.size();
  if (eq_matrix.cols() != n && eq_matrix.rows() > 0)
    throw DimensionError("LP: equality matrix column count does not match objective.");
  if (eq_matrix.rows() != eq_rhs.size())
    throw DimensionError("LP: equality matrix and rhs have different row counts.");
  if (ineq_matrix.cols() != n && ineq_matrix.rows() > 0)
    throw DimensionError("LP: inequality matrix column count does not match objective.");
  if (ineq_matrix.rows() != ineq_rhs.size())
    throw DimensionError("LP: inequality matrix and rhs have different row counts.");
  if (lower.size() != n || upper.size() != n)
    throw DimensionError("LP: bound vectors do not match objective.");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (lower(j) == kInf || upper(j) == -kInf || std::isnan(lower(j)) || std::isnan(upper(j)))
      throw DimensionError("LP: invalid variable bound.");
  }
}

namespace {

// x_j = offset + sign * y[pos] - y[neg]
struct VarMap {
  int pos = -1;
  int neg = -1;
  double sign = 1.0;
  double offset = 0.0;
};

}  // namespace

Solution solve(const LinearProgram& lp, const SolverOptions& opts) {
  lp.validate();
  const int n = static_cast<int>(lp.num_vars());
  const int meq = static_cast<int>(lp.eq_rhs.size());
  const int min = static_cast<int>(lp.ineq_rhs.size());
  const int m = meq + min;

  Solution sol;
  sol.x = Eigen::VectorXd::Zero(n);

  // map variables onto nonnegative columns
  std::vector<VarMap> vmap(n);
  std::vector<double> col_upper;
  for (int j = 0; j < n; ++j) {
    double l = lp.lower(j), u = lp.upper(j);
    if (l > u) {
      sol.status = Status::Infeasible;
      return sol;
    }
    VarMap& vm = vmap[j];
    if (l > -kInf) {
      vm.offset = l;
      vm.pos = static_cast<int>(col_upper.size());
      col_upper.push_back(u < kInf ? u - l : kInf);
    } else if (u < kInf) {
      vm.offset = u;
      vm.sign = -1.0;
      vm.pos = static_cast<int>(col_upper.size());
      col_upper.push_back(kInf);
    } else {
      vm.pos = static_cast<int>(col_upper.size());
      col_upper.push_back(kInf);
      vm.neg = static_cast<int>(col_upper.size());
      col_upper.push_back(kInf);
    }
  }
  const int nstruct = static_cast<int>(col_upper.size());

  // row data before sign normalization
  std::vector<double> rhs(m);
  std::vector<bool> negate(m, false);
  for (int i = 0; i < m; ++i) {
    double r = i < meq ? lp.eq_rhs(i) : lp.ineq_rhs(i - meq);
    for (int j = 0; j < n; ++j) {
      double a = i < meq ? lp.eq_matrix(i, j) : lp.ineq_matrix(i - meq, j);
      if (a != 0.0) r -= a * vmap[j].offset;
    }
    rhs[i] = r;
    negate[i] = r < 0.0;
  }

  // slack per inequality row, artificial where the slack cannot start basic
  int nart = 0;
  for (int i = 0; i < m; ++i)
    if (i < meq || negate[i]) ++nart;
  const int slack0 = nstruct;
  const int art0 = nstruct + min;
  const int ncols = art0 + nart;

  detail::Tableau tab;
  tab.reset(m, ncols);
  for (int j = 0; j < nstruct; ++j) tab.upper[j] = col_upper[j];

  int next_art = art0;
  double rhs_scale = 1.0;
  for (int i = 0; i < m; ++i) {
    double s = negate[i] ? -1.0 : 1.0;
    double* ri = tab.row(i);
    for (int j = 0; j < n; ++j) {
      double a = i < meq ? lp.eq_matrix(i, j) : lp.ineq_matrix(i - meq, j);
      if (a == 0.0) continue;
      const VarMap& vm = vmap[j];
      ri[vm.pos] += s * a * vm.sign;
      if (vm.neg >= 0) ri[vm.neg] -= s * a;
    }
    ri[ncols] = s * rhs[i];
    rhs_scale = std::max(rhs_scale, std::abs(rhs[i]));
    if (i >= meq) ri[slack0 + (i - meq)] = s;
    if (i < meq || negate[i]) {
      ri[next_art] = 1.0;
      tab.basis[i] = next_art;
      tab.row_of[next_art] = i;
      ++next_art;
    } else {
      tab.basis[i] = slack0 + (i - meq);
      tab.row_of[slack0 + (i - meq)] = i;
    }
  }

  const long max_iters = opts.iteration_factor * static_cast<long>(m + ncols);
  long iters = 0;

  // phase 1
  if (nart > 0) {
    std::vector<double> c1(ncols, 0.0);
    for (int j = art0; j < ncols; ++j) c1[j] = 1.0;
    tab.set_costs(c1);
    tab.optimize(iters, max_iters);
    if (tab.objective() > kInternalFeasTol * rhs_scale) {
      sol.status = Status::Infeasible;
      sol.iterations = iters;
      return sol;
    }
    // drive remaining artificials out of the basis
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] < art0) continue;
      const double* pr = tab.row(r);
      int best = -1;
      double best_abs = 1e-9;
      for (int j = 0; j < art0; ++j) {
        if (tab.row_of[j] >= 0) continue;
        if (std::abs(pr[j]) > best_abs) {
          best_abs = std::abs(pr[j]);
          best = j;
        }
      }
      if (best >= 0) tab.pivot(r, best);
    }
    for (int j = art0; j < ncols; ++j) tab.blocked[j] = 1;
  }

  // phase 2
  std::vector<double> c2(ncols, 0.0);
  for (int j = 0; j < n; ++j) {
    double cj = lp.objective(j);
    const VarMap& vm = vmap[j];
    c2[vm.pos] += cj * vm.sign;
    if (vm.neg >= 0) c2[vm.neg] -= cj;
  }
  tab.set_costs(c2);
  Status st = tab.optimize(iters, max_iters);
  sol.iterations = iters;
  sol.status = st;
  if (st != Status::Optimal) return sol;

  for (int j = 0; j < n; ++j) {
    const VarMap& vm = vmap[j];
    double v = vm.offset + vm.sign * tab.value(vm.pos);
    if (vm.neg >= 0) v -= tab.value(vm.neg);
    sol.x(j) = v;
  }
  sol.objective_value = lp.objective.dot(sol.x);
  return sol;
}

double max_violation(const LinearProgram& lp, const Eigen::VectorXd& x) {
  double v = 0.0;
  if (lp.eq_rhs.size() > 0)
    v = std::max(v, (lp.eq_matrix * x - lp.eq_rhs).cwiseAbs().maxCoeff());
  if (lp.ineq_rhs.size() > 0)
    v = std::max(v, (lp.ineq_matrix * x - lp.ineq_rhs).maxCoeff());
  if (x.size() > 0) {
    v = std::max(v, (lp.lower - x).maxCoeff());
    v = std::max(v, (x - lp.upper).maxCoeff());
  }
  return v;
}

}  // namespace czreach::lp
