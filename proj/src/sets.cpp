#include "czreach/sets.hpp"

#include "simplex_core.hpp"

#include <algorithm>
#include <cmath>

namespace czreach {

namespace {

Mat hstack(const Mat& a, const Mat& b) {
  Mat out(std::max(a.rows(), b.rows()), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Vec vstack(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size());
  out << a, b;
  return out;
}

void require_dims(bool ok, const char* msg) {
  if (!ok) throw DimensionError(msg);
}

CZ intersect_halfspace_unchecked(const CZ& S, const Vec& h, double a) {
  const Mat& G = S.generators();
  const Eigen::Index N = G.cols(), m = S.num_constraints();
  Eigen::RowVectorXd hG = h.transpose() * G;
  double hc = h.dot(S.center());
  double d = std::max(a - hc + hG.cwiseAbs().sum(), 0.0);

  Mat G2 = Mat::Zero(S.dim(), N + 1);
  G2.leftCols(N) = G;
  Mat A2 = Mat::Zero(m + 1, N + 1);
  A2.topLeftCorner(m, N) = S.constraint_matrix();
  A2.block(m, 0, 1, N) = hG;
  A2(m, N) = 0.5 * d;
  Vec b2(m + 1);
  b2 << S.constraint_vector(), a - hc - 0.5 * d;
  return CZ(std::move(G2), S.center(), std::move(A2), std::move(b2));
}

lp::LinearProgram parameter_program(const CZ& S) {
  lp::LinearProgram prog(S.num_generators());
  prog.eq_matrix = S.constraint_matrix();
  prog.eq_rhs = S.constraint_vector();
  prog.lower.setConstant(-1.0);
  prog.upper.setConstant(1.0);
  return prog;
}

}  // namespace

// ---------------------------------------------------------------- Hyperbox

Hyperbox::Hyperbox(Vec lower, Vec upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_dims(lower_.size() == upper_.size(), "Hyperbox: bound vectors differ in length.");
  for (Eigen::Index i = 0; i < lower_.size(); ++i)
    if (!(lower_(i) <= upper_(i))) throw DimensionError("Hyperbox: lower bound exceeds upper bound.");
}

double Hyperbox::volume() const {
  double v = 1.0;
  for (Eigen::Index i = 0; i < dim(); ++i) v *= upper_(i) - lower_(i);
  return v;
}

bool Hyperbox::contains(const Vec& x, double tol) const {
  require_dims(x.size() == dim(), "Hyperbox::contains: dimension mismatch.");
  return ((x - lower_).array() >= -tol).all() && ((upper_ - x).array() >= -tol).all();
}

bool Hyperbox::contains(const Hyperbox& other, double tol) const {
  require_dims(other.dim() == dim(), "Hyperbox::contains: dimension mismatch.");
  return ((other.lower_ - lower_).array() >= -tol).all() &&
         ((upper_ - other.upper_).array() >= -tol).all();
}

Hyperbox Hyperbox::hull(const Hyperbox& a, const Hyperbox& b) {
  require_dims(a.dim() == b.dim(), "Hyperbox::hull: dimension mismatch.");
  return Hyperbox(a.lower_.cwiseMin(b.lower_), a.upper_.cwiseMax(b.upper_));
}

Hyperbox Hyperbox::product(const Hyperbox& a, const Hyperbox& b) {
  return Hyperbox(vstack(a.lower_, b.lower_), vstack(a.upper_, b.upper_));
}

// ---------------------------------------------------------------- Zonotope

Zonotope::Zonotope(Mat G, Vec c) : G_(std::move(G)), c_(std::move(c)) {
  if (G_.rows() != c_.size()) {
    if (G_.size() == 0)
      G_.resize(c_.size(), 0);
    else
      throw DimensionError("Zonotope: generator rows do not match center.");
  }
}

Zonotope::Zonotope(const Hyperbox& box)
    : Zonotope(Mat(box.half_widths().asDiagonal()), box.center()) {}

Zonotope Zonotope::point(const Vec& c) { return Zonotope(Mat(c.size(), 0), c); }

// ---------------------------------------------------------------- HPolytope

HPolytope::HPolytope(Mat H, Vec a) : H_(std::move(H)), a_(std::move(a)) {
  require_dims(H_.rows() == a_.size(), "HPolytope: H rows do not match a.");
}

HPolytope::HPolytope(const Hyperbox& box) {
  const Eigen::Index n = box.dim();
  H_.resize(2 * n, n);
  H_ << Mat::Identity(n, n), -Mat::Identity(n, n);
  a_.resize(2 * n);
  a_ << box.upper(), -box.lower();
}

bool HPolytope::contains(const Vec& x, double tol) const {
  require_dims(x.size() == dim(), "HPolytope::contains: dimension mismatch.");
  if (num_rows() == 0) return true;
  return ((H_ * x - a_).array() <= tol).all();
}

// ---------------------------------------------------------------- CZ

ConstrainedZonotope::ConstrainedZonotope(Mat G, Vec c, Mat A, Vec b)
    : G_(std::move(G)), c_(std::move(c)), A_(std::move(A)), b_(std::move(b)) {
  if (G_.rows() != c_.size()) {
    if (G_.size() == 0)
      G_.resize(c_.size(), 0);
    else
      throw DimensionError("ConstrainedZonotope: generator rows do not match center.");
  }
  if (A_.rows() == 0 && b_.size() == 0) A_.resize(0, G_.cols());
  require_dims(A_.rows() == b_.size(), "ConstrainedZonotope: A rows do not match b.");
  require_dims(A_.cols() == G_.cols(), "ConstrainedZonotope: A and G column counts differ.");
}

ConstrainedZonotope::ConstrainedZonotope(Mat G, Vec c)
    : ConstrainedZonotope(std::move(G), std::move(c), Mat(0, 0), Vec(0)) {}

ConstrainedZonotope::ConstrainedZonotope(const Zonotope& z)
    : ConstrainedZonotope(z.generators(), z.center()) {}

ConstrainedZonotope::ConstrainedZonotope(const Hyperbox& box)
    : ConstrainedZonotope(Zonotope(box)) {}

// ---------------------------------------------------------------- SafeSet

SafeSet::SafeSet(std::vector<HPolytope> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw DimensionError("SafeSet: at least one piece is required.");
  for (const HPolytope& p : pieces_)
    require_dims(p.dim() == pieces_.front().dim(), "SafeSet: pieces differ in dimension.");
}

bool SafeSet::contains(const Vec& x, double tol) const {
  for (const HPolytope& p : pieces_)
    if (p.contains(x, tol)) return true;
  return false;
}

// ---------------------------------------------------------------- CG-Rep operations

CZ linear_map(const Mat& M, const CZ& S) {
  require_dims(M.cols() == S.dim(), "linear_map: invalid input dimensions.");
  return CZ(M * S.generators(), M * S.center(), S.constraint_matrix(), S.constraint_vector());
}

CZ translate(const CZ& S, const Vec& t) {
  require_dims(t.size() == S.dim(), "translate: invalid input dimensions.");
  return CZ(S.generators(), S.center() + t, S.constraint_matrix(), S.constraint_vector());
}

CZ minkowski_sum(const CZ& S1, const CZ& S2) {
  require_dims(S1.dim() == S2.dim(), "minkowski_sum: invalid input dimensions.");
  return CZ(hstack(S1.generators(), S2.generators()), S1.center() + S2.center(),
            block_diag(S1.constraint_matrix(), S2.constraint_matrix()),
            vstack(S1.constraint_vector(), S2.constraint_vector()));
}

CZ intersect_mapped(const CZ& Z, const CZ& Y, const Mat& R) {
  require_dims(R.rows() == Y.dim() && R.cols() == Z.dim(), "intersect_mapped: invalid input dimensions.");
  const Eigen::Index nz = Z.num_generators(), ny = Y.num_generators();
  const Eigen::Index mz = Z.num_constraints(), my = Y.num_constraints();
  Mat G = Mat::Zero(Z.dim(), nz + ny);
  G.leftCols(nz) = Z.generators();
  Mat A = Mat::Zero(mz + my + Y.dim(), nz + ny);
  A.topLeftCorner(mz, nz) = Z.constraint_matrix();
  A.block(mz, nz, my, ny) = Y.constraint_matrix();
  A.block(mz + my, 0, Y.dim(), nz) = R * Z.generators();
  A.block(mz + my, nz, Y.dim(), ny) = -Y.generators();
  Vec b(mz + my + Y.dim());
  b << Z.constraint_vector(), Y.constraint_vector(), Y.center() - R * Z.center();
  return CZ(std::move(G), Z.center(), std::move(A), std::move(b));
}

CZ intersect(const CZ& S1, const CZ& S2) {
  require_dims(S1.dim() == S2.dim(), "intersect: invalid input dimensions.");
  return intersect_mapped(S1, S2, Mat::Identity(S1.dim(), S1.dim()));
}

CZ intersect_halfspace(const CZ& S, const Vec& h, double a) {
  require_dims(h.size() == S.dim(), "intersect_halfspace: invalid input dimensions.");
  double lowest = -support(S, -h);
  if (lowest > a + lp::kFeasibilityTol)
    throw EmptyIntersectionError("intersect_halfspace: the halfspace does not meet the set.");
  return intersect_halfspace_unchecked(S, h, a);
}

CZ product(const CZ& S1, const CZ& S2) {
  return CZ(block_diag(S1.generators(), S2.generators()), vstack(S1.center(), S2.center()),
            block_diag(S1.constraint_matrix(), S2.constraint_matrix()),
            vstack(S1.constraint_vector(), S2.constraint_vector()));
}

std::pair<CZ, CZ> split(const CZ& S, Eigen::Index j) {
  if (j < 0 || j >= S.num_generators()) throw DimensionError("split: generator index out of range.");
  Mat G = S.generators();
  Mat A = S.constraint_matrix();
  G.col(j) *= 0.5;
  A.col(j) *= 0.5;
  Vec gj = G.col(j), aj = A.col(j);
  CZ first(G, S.center() + gj, A, S.constraint_vector() - aj);
  CZ second(std::move(G), S.center() - gj, std::move(A), S.constraint_vector() + aj);
  return {std::move(first), std::move(second)};
}

std::optional<CZ> intersect_polytope(const CZ& S, const HPolytope& P) {
  require_dims(P.dim() == S.dim(), "intersect_polytope: invalid input dimensions.");
  if (is_empty(S)) return std::nullopt;
  CZ out = S;
  for (Eigen::Index i = 0; i < P.num_rows(); ++i) {
    Vec h = P.H().row(i).transpose();
    double a = P.a()(i);
    if (h.cwiseAbs().maxCoeff() == 0.0) {
      if (a < 0.0) return std::nullopt;
      continue;
    }
    if (support(out, h) <= a) continue;
    if (-support(out, -h) > a + lp::kFeasibilityTol) return std::nullopt;
    out = intersect_halfspace_unchecked(out, h, a);
  }
  return out;
}

// ---------------------------------------------------------------- LP queries

SupportPoint support_point(const CZ& S, const Vec& h) {
  require_dims(h.size() == S.dim(), "support: invalid input dimensions.");
  Vec w = S.generators().transpose() * h;
  SupportPoint sp;
  if (S.num_constraints() == 0) {
    sp.theta = w.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
  } else {
    lp::LinearProgram prog = parameter_program(S);
    prog.objective = -w;
    lp::Solution sol = lp::solve(prog);
    if (sol.status != lp::Status::Optimal) throw EmptySetError("support: the set is empty.");
    sp.theta = sol.x;
  }
  sp.point = S.generators() * sp.theta + S.center();
  sp.value = h.dot(S.center()) + w.dot(sp.theta);
  return sp;
}

double support(const CZ& S, const Vec& h) {
  if (S.num_constraints() == 0) {
    require_dims(h.size() == S.dim(), "support: invalid input dimensions.");
    return h.dot(S.center()) + (S.generators().transpose() * h).cwiseAbs().sum();
  }
  return support_point(S, h).value;
}

bool is_empty(const CZ& S) {
  if (S.num_constraints() == 0) return false;
  return lp::solve(parameter_program(S)).status != lp::Status::Optimal;
}

Hyperbox interval_closure(const CZ& S) {
  const Eigen::Index n = S.dim();
  if (S.num_constraints() == 0) {
    Vec r = S.generators().cwiseAbs().rowwise().sum();
    return Hyperbox(S.center() - r, S.center() + r);
  }
  Vec lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Unit(n, i);
    hi(i) = support(S, e);
    lo(i) = -support(S, -e);
  }
  return Hyperbox(lo, hi.cwiseMax(lo));
}

Vec interior_parameter(const CZ& S) {
  const Eigen::Index N = S.num_generators(), m = S.num_constraints();
  if (m == 0) return Vec::Zero(N);
  lp::LinearProgram prog(N + 1);
  prog.objective(N) = -1.0;
  prog.eq_matrix = Mat::Zero(m, N + 1);
  prog.eq_matrix.leftCols(N) = S.constraint_matrix();
  prog.eq_rhs = S.constraint_vector();
  prog.ineq_matrix = Mat::Zero(2 * N, N + 1);
  prog.ineq_matrix.topLeftCorner(N, N).setIdentity();
  prog.ineq_matrix.bottomLeftCorner(N, N) = -Mat::Identity(N, N);
  prog.ineq_matrix.col(N).setOnes();
  prog.ineq_rhs = Vec::Ones(2 * N);
  prog.lower.head(N).setConstant(-1.0);
  prog.upper.head(N).setConstant(1.0);
  prog.lower(N) = 0.0;
  prog.upper(N) = 1.0;
  lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal) throw EmptySetError("interior_parameter: the set is empty.");
  return sol.x.head(N).cwiseMax(-1.0).cwiseMin(1.0);
}

// ---------------------------------------------------------------- membership

struct MembershipOracle::Impl {
  Mat M;       // [G; A]
  Vec offset;  // rhs for x = 0 after the shift theta = y - 1
  Eigen::Index n = 0;
  int rows = 0;
  int cols = 0;
  std::vector<double> cost;
  lp::detail::Tableau tab;
  // last all-structural feasible basis, reused while it stays within bounds
  std::vector<int> basic;
  Vec y_fixed;  // nonbasic values, zero on basic positions
  Eigen::PartialPivLU<Mat> lu;
  bool have_basis = false;

  void remember_basis() {
    const int N = static_cast<int>(M.cols());
    have_basis = false;
    for (int i = 0; i < rows; ++i)
      if (tab.basis[i] >= N) return;
    basic.assign(tab.basis.begin(), tab.basis.end());
    y_fixed = Vec::Zero(N);
    for (int j = 0; j < N; ++j)
      if (tab.row_of[j] < 0 && tab.flipped[j]) y_fixed(j) = tab.upper[j];
    Mat Bm(rows, rows);
    for (int i = 0; i < rows; ++i) Bm.col(i) = M.col(basic[i]);
    lu.compute(Bm);
    have_basis = lu.rcond() > 1e-10;
  }
};

MembershipOracle::MembershipOracle(const CZ& S) : impl_(std::make_unique<Impl>()) {
  Impl& I = *impl_;
  const Eigen::Index n = S.dim(), m = S.num_constraints(), N = S.num_generators();
  I.n = n;
  I.M.resize(n + m, N);
  I.M << S.generators(), S.constraint_matrix();
  I.offset.resize(n + m);
  Vec ones = Vec::Ones(N);
  I.offset << -S.center() + S.generators() * ones, S.constraint_vector() + S.constraint_matrix() * ones;
  I.rows = static_cast<int>(n + m);
  I.cols = static_cast<int>(N) + I.rows;
  I.cost.assign(I.cols, 0.0);
  for (int j = static_cast<int>(N); j < I.cols; ++j) I.cost[j] = 1.0;
}

MembershipOracle::~MembershipOracle() = default;
MembershipOracle::MembershipOracle(MembershipOracle&&) noexcept = default;
MembershipOracle& MembershipOracle::operator=(MembershipOracle&&) noexcept = default;

double MembershipOracle::residual(const Vec& x) {
  Impl& I = *impl_;
  require_dims(x.size() == I.n, "contains_point: invalid input dimensions.");
  const int N = static_cast<int>(I.M.cols());
  Vec r = I.offset;
  r.head(I.n) += x;
  if (I.have_basis) {
    Vec yb = I.lu.solve(r - I.M * I.y_fixed);
    if (yb.minCoeff() >= 0.0 && yb.maxCoeff() <= 2.0) {
      Vec y = I.y_fixed;
      for (int i = 0; i < I.rows; ++i) y(I.basic[i]) = yb(i);
      return (I.M * y - r).lpNorm<1>();
    }
  }
  lp::detail::Tableau& tab = I.tab;
  tab.reset(I.rows, I.cols);
  for (int j = 0; j < N; ++j) tab.upper[j] = 2.0;
  for (int i = 0; i < I.rows; ++i) {
    double r = I.offset(i) + (i < I.n ? x(i) : 0.0);
    double s = r < 0.0 ? -1.0 : 1.0;
    double* ri = tab.row(i);
    for (int j = 0; j < N; ++j) ri[j] = s * I.M(i, j);
    ri[N + i] = 1.0;
    ri[I.cols] = s * r;
    tab.basis[i] = N + i;
    tab.row_of[N + i] = i;
  }
  tab.set_costs(I.cost);
  long iters = 0;
  tab.optimize(iters, 50L * (I.rows + I.cols));
  double res = std::max(tab.objective(), 0.0);
  if (res <= lp::kInternalFeasTol) I.remember_basis();
  return res;
}

double membership_residual(const CZ& S, const Vec& x) { return MembershipOracle(S).residual(x); }

bool contains_point(const CZ& S, const Vec& x, double tol) {
  return MembershipOracle(S).residual(x) <= tol;
}

// ---------------------------------------------------------------- zonotopes

Zonotope linear_map(const Mat& M, const Zonotope& Z) {
  require_dims(M.cols() == Z.dim(), "linear_map: invalid input dimensions.");
  return Zonotope(M * Z.generators(), M * Z.center());
}

Zonotope minkowski_sum(const Zonotope& Z1, const Zonotope& Z2) {
  require_dims(Z1.dim() == Z2.dim(), "minkowski_sum: invalid input dimensions.");
  return Zonotope(hstack(Z1.generators(), Z2.generators()), Z1.center() + Z2.center());
}

double support(const Zonotope& Z, const Vec& h) {
  require_dims(h.size() == Z.dim(), "support: invalid input dimensions.");
  return h.dot(Z.center()) + (Z.generators().transpose() * h).cwiseAbs().sum();
}

Hyperbox interval_closure(const Zonotope& Z) {
  Vec r = Z.generators().cwiseAbs().rowwise().sum();
  return Hyperbox(Z.center() - r, Z.center() + r);
}

// ---------------------------------------------------------------- H-polytopes

double support(const HPolytope& P, const Vec& h) {
  require_dims(h.size() == P.dim(), "support: invalid input dimensions.");
  lp::LinearProgram prog(P.dim());
  prog.objective = -h;
  prog.ineq_matrix = P.H();
  prog.ineq_rhs = P.a();
  lp::Solution sol = lp::solve(prog);
  if (sol.status == lp::Status::Infeasible) throw EmptySetError("support: the polytope is empty.");
  if (sol.status == lp::Status::Unbounded) throw UnboundedSetError("support: the polytope is unbounded.");
  return -sol.objective_value;
}

bool is_empty(const HPolytope& P) {
  lp::LinearProgram prog(P.dim());
  prog.ineq_matrix = P.H();
  prog.ineq_rhs = P.a();
  return lp::solve(prog).status == lp::Status::Infeasible;
}

Hyperbox interval_closure(const HPolytope& P) {
  const Eigen::Index n = P.dim();
  Vec lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec e = Vec::Unit(n, i);
    hi(i) = support(P, e);
    lo(i) = -support(P, -e);
  }
  return Hyperbox(lo, hi.cwiseMax(lo));
}

}  // namespace czreach
