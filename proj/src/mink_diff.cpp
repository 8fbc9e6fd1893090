#include "czreach/mink_diff.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace czreach {

namespace {
constexpr double kDropGeneratorNorm = 1e-12;
constexpr double kRadiusMargin = 1.1;
}  // namespace

MinOutSolution min_out_simple(const CZ& minuend, const Zonotope& subtrahend, const MinOutOptions& opts) {
  if (minuend.dim() != subtrahend.dim()) throw DimensionError("min_out_simple: invalid input dimensions.");
  const Eigen::Index n = minuend.dim(), N = minuend.num_generators(), m = minuend.num_constraints();
  const Eigen::Index Np = subtrahend.num_generators();
  if (opts.weights.size() != 0 && opts.weights.size() != N)
    throw DimensionError("min_out_simple: weight vector length does not match the generators.");
  Vec w = opts.weights.size() == 0 ? Vec::Ones(N) : opts.weights;

  MinOutSolution sol;
  sol.gamma = Mat::Zero(N, Np);
  sol.sigma_bar = Vec::Zero(N);
  sol.c_s = subtrahend.center();
  sol.b_s = Vec::Zero(m);

  // near-zero subtrahend generators contribute nothing
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < Np; ++k)
    if (subtrahend.generators().col(k).norm() >= kDropGeneratorNorm) keep.push_back(k);
  const Eigen::Index K = static_cast<Eigen::Index>(keep.size());
  if (K == 0 && !opts.ensure_nonempty) return sol;

  // variables: Gamma+ (N x K), Gamma- (N x K), column-major, then theta (N) if requested
  const Eigen::Index nk = N * K;
  const Eigen::Index ntheta = opts.ensure_nonempty ? N : 0;
  const Eigen::Index nv = 2 * nk + ntheta;
  const Eigen::Index rows_per = n + m;
  lp::LinearProgram prog(nv);
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index i = 0; i < N; ++i) {
      prog.objective(i + N * k) = w(i);
      prog.objective(nk + i + N * k) = w(i);
    }
  prog.lower.head(2 * nk).setZero();
  prog.upper.head(2 * nk).setOnes();
  if (ntheta > 0) {
    prog.lower.tail(N).setConstant(-1.0);
    prog.upper.tail(N).setConstant(1.0);
  }

  Mat M(rows_per, N);
  M << minuend.generators(), minuend.constraint_matrix();
  const Eigen::Index neq = rows_per * K + (ntheta > 0 ? m : 0);
  prog.eq_matrix = Mat::Zero(neq, nv);
  prog.eq_rhs = Vec::Zero(neq);
  for (Eigen::Index k = 0; k < K; ++k) {
    Eigen::Index r0 = rows_per * k;
    prog.eq_matrix.block(r0, N * k, rows_per, N) = M;
    prog.eq_matrix.block(r0, nk + N * k, rows_per, N) = -M;
    prog.eq_rhs.segment(r0, n) = subtrahend.generators().col(keep[k]);
  }
  if (ntheta > 0 && m > 0) {
    prog.eq_matrix.block(rows_per * K, 2 * nk, m, N) = minuend.constraint_matrix();
    prog.eq_rhs.tail(m) = minuend.constraint_vector();
  }

  // row sums of |Gamma| bounded by 1, or by 1 -+ theta when nonemptiness is enforced
  const Eigen::Index nin = ntheta > 0 ? 2 * N : N;
  prog.ineq_matrix = Mat::Zero(nin, nv);
  prog.ineq_rhs = Vec::Ones(nin);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index k = 0; k < K; ++k) {
      prog.ineq_matrix(i, i + N * k) = 1.0;
      prog.ineq_matrix(i, nk + i + N * k) = 1.0;
      if (ntheta > 0) {
        prog.ineq_matrix(N + i, i + N * k) = 1.0;
        prog.ineq_matrix(N + i, nk + i + N * k) = 1.0;
      }
    }
  if (ntheta > 0) {
    for (Eigen::Index i = 0; i < N; ++i) {
      prog.ineq_matrix(i, 2 * nk + i) = 1.0;
      prog.ineq_matrix(N + i, 2 * nk + i) = -1.0;
    }
  }

  lp::Solution res = lp::solve(prog);
  sol.lp_iterations = res.iterations;
  if (res.status != lp::Status::Optimal)
    throw MinOutInfeasible("min_out_simple: no scaled enclosure of the subtrahend exists.");

  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index i = 0; i < N; ++i) {
      double g = res.x(i + N * k) - res.x(nk + i + N * k);
      sol.gamma(i, keep[k]) = std::abs(g) < 1e-13 ? 0.0 : g;
    }
  sol.sigma_bar = sol.gamma.cwiseAbs().rowwise().sum().cwiseMin(1.0);
  return sol;
}

DiffResult step_two(const CZ& minuend, const MinOutSolution& shrink) {
  const Eigen::Index N = minuend.num_generators();
  if (shrink.sigma_bar.size() != N || shrink.c_s.size() != minuend.dim())
    throw DimensionError("step_two: shrink solution does not match the minuend.");
  Vec keep = (Vec::Ones(N) - shrink.sigma_bar).cwiseMax(0.0);
  DiffResult out{
      CZ(minuend.generators() * keep.asDiagonal(), minuend.center() - shrink.c_s,
         minuend.constraint_matrix() * keep.asDiagonal(), minuend.constraint_vector()),
      CZ(minuend.generators() * shrink.sigma_bar.asDiagonal(), shrink.c_s,
         minuend.constraint_matrix() * shrink.sigma_bar.asDiagonal(),
         shrink.b_s.size() == minuend.num_constraints() ? shrink.b_s : Vec::Zero(minuend.num_constraints())),
      shrink, false, false};
  return out;
}

DiffResult minkdiff_two_step(const CZ& minuend, const Zonotope& subtrahend, bool ensure_nonempty) {
  MinOutOptions opts;
  opts.ensure_nonempty = ensure_nonempty;
  return step_two(minuend, min_out_simple(minuend, subtrahend, opts));
}

HPolytope exact_hrep_diff(const HPolytope& P, const Zonotope& Z) {
  if (P.dim() != Z.dim()) throw DimensionError("exact_hrep_diff: invalid input dimensions.");
  Vec a = P.a();
  for (Eigen::Index i = 0; i < P.num_rows(); ++i) a(i) -= support(Z, Vec(P.H().row(i).transpose()));
  return HPolytope(P.H(), a);
}

Vec chebyshev_center(const HPolytope& P) {
  const Eigen::Index n = P.dim(), rows = P.num_rows();
  lp::LinearProgram prog(n + 1);
  prog.objective(n) = -1.0;
  prog.lower(n) = 0.0;
  prog.ineq_matrix = Mat::Zero(rows, n + 1);
  prog.ineq_matrix.leftCols(n) = P.H();
  prog.ineq_matrix.col(n) = P.H().rowwise().norm();
  prog.ineq_rhs = P.a();
  lp::Solution sol = lp::solve(prog);
  if (sol.status == lp::Status::Infeasible) throw EmptySetError("chebyshev_center: the polytope is empty.");
  if (sol.status == lp::Status::Unbounded) throw UnboundedSetError("chebyshev_center: the polytope is unbounded.");
  return sol.x.head(n);
}

namespace {

HPolytope drop_zero_rows(const HPolytope& P) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < P.num_rows(); ++i) {
    if (P.H().row(i).cwiseAbs().maxCoeff() > 0.0)
      rows.push_back(i);
    else if (P.a()(i) < 0.0)
      throw EmptySetError("rich_cgrep: the polytope is empty.");
  }
  Mat H(static_cast<Eigen::Index>(rows.size()), P.dim());
  Vec a(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    H.row(k) = P.H().row(rows[k]);
    a(k) = P.a()(rows[k]);
  }
  return HPolytope(H, a);
}

}  // namespace

CZ rich_cgrep(const HPolytope& P_in, const Zonotope& Z) {
  if (P_in.dim() != Z.dim()) throw DimensionError("rich_cgrep: invalid input dimensions.");
  HPolytope P = drop_zero_rows(P_in);
  const Eigen::Index n = P.dim(), l = P.num_rows();
  Hyperbox box = interval_closure(P);
  Vec c = Z.center() + chebyshev_center(exact_hrep_diff(P, Z));

  double r0 = ((c - box.lower()).cwiseMax(box.upper() - c)).maxCoeff();
  double r = std::max(kRadiusMargin * r0, 1e-9);

  Mat G = Mat::Zero(n, n + l);
  G.leftCols(n) = r * Mat::Identity(n, n);
  Mat A = Mat::Zero(l, n + l);
  A.leftCols(n) = r * P.H();
  Vec b(l);
  for (Eigen::Index i = 0; i < l; ++i) {
    double slack = P.a()(i) - P.H().row(i).dot(c);
    double reach = r * P.H().row(i).cwiseAbs().sum();
    A(i, n + i) = 0.5 * (slack + reach);
    b(i) = 0.5 * (slack - reach);
  }
  return CZ(G, c, A, b);
}

CZ empty_cz(Eigen::Index n) {
  return CZ(Mat::Zero(n, 1), Vec::Zero(n), Mat::Ones(1, 1), Vec::Constant(1, 2.0));
}

DiffResult minkdiff_exact_via_rich(const HPolytope& P, const Zonotope& Z) {
  CZ rich;
  try {
    rich = rich_cgrep(P, Z);
  } catch (const EmptySetError&) {
    MinOutSolution none;
    none.c_s = Z.center();
    return DiffResult{empty_cz(P.dim()), CZ(Z), none, true, true};
  }
  DiffResult out = step_two(rich, min_out_simple(rich, Z));
  out.exactness_certificate = true;
  return out;
}

CZ enrich_halfspace(const CZ& S, const Vec& h, double a) {
  if (h.size() != S.dim()) throw DimensionError("enrich_halfspace: invalid input dimensions.");
  if (support(S, h) > a + 1e-9 * std::max(1.0, std::abs(a)))
    throw NotRedundantError("enrich_halfspace: the halfspace cuts the set.");
  return intersect_halfspace(S, h, a);
}

}  // namespace czreach
