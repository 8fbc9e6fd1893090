#include "czreach/brs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace czreach {

namespace {

constexpr double kInverseCondLimit = 1e8;
constexpr double kSingularCondLimit = 1e12;
constexpr double kBoxInclusionTol = 1e-12;

double condition_number(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A);
  const Vec& s = svd.singularValues();
  if (s.size() == 0) return 1.0;
  double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

// X - (L + W), nullopt if no enclosure exists
std::optional<CZ> shrink_target(const CZ& X, const Zonotope& W, const Zonotope& L) {
  try {
    return minkdiff_two_step(X, minkowski_sum(L, W)).difference;
  } catch (const MinOutInfeasible&) {
    return std::nullopt;
  }
}

HPolytope lift_to_xu(const HPolytope& P, Eigen::Index q) {
  Mat H = Mat::Zero(P.num_rows(), P.dim() + q);
  H.leftCols(P.dim()) = P.H();
  return HPolytope(H, P.a());
}

std::optional<CZ> finish_pre_xu(CZ Z, Eigen::Index q, const HPolytope* safe) {
  if (safe != nullptr) {
    std::optional<CZ> cut = intersect_polytope(Z, lift_to_xu(*safe, q));
    if (!cut) return std::nullopt;
    Z = std::move(*cut);
  }
  if (is_empty(Z)) return std::nullopt;
  return Z;
}

Hyperbox xu_box(const CZ& S, const CZ& U) { return Hyperbox::product(interval_closure(S), interval_closure(U)); }

}  // namespace

const char* to_string(Method m) { return m == Method::Scaling ? "scaling" : "splitting"; }

const char* to_string(Termination t) {
  switch (t) {
    case Termination::HorizonReached:
      return "horizon_reached";
    case Termination::EmptySet:
      return "empty_set";
    case Termination::BranchBudgetExhausted:
      return "branch_budget_exhausted";
    case Termination::ScaleIterExceeded:
      return "scale_iter_exceeded";
  }
  return "unknown";
}

void ReachProblem::validate() const {
  const Eigen::Index n = model.n, q = model.q;
  if (target.dim() != n) throw std::invalid_argument("target dimension does not match the model state");
  if (inputs.dim() != q) throw std::invalid_argument("input set dimension does not match the model input");
  if (disturbance.dim() != n) throw std::invalid_argument("disturbance dimension does not match the model state");
  if (safe.pieces().empty()) throw std::invalid_argument("safe set has no pieces");
  if (safe.dim() != n) throw std::invalid_argument("safe set dimension does not match the model state");
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  if (L_bar.size() != 0 && L_bar.size() != n) throw std::invalid_argument("L_bar length does not match the model state");
  if (L_bar.size() != 0 && (L_bar.array() < 0.0).any()) throw std::invalid_argument("L_bar must be nonnegative");
  if (max_branches < 1) throw std::invalid_argument("max_branches must be positive");
  if (max_scale_iters < 1) throw std::invalid_argument("max_scale_iters must be positive");
  if (max_split_depth < 0) throw std::invalid_argument("max_split_depth must be nonnegative");
  if (method == Method::Scaling && safe.size() != 1)
    throw std::invalid_argument("the scaling method supports a single safe piece; use splitting");
  if (is_empty(target)) throw std::invalid_argument("target set is empty");
  if (is_empty(inputs)) throw std::invalid_argument("input set is empty");
}

std::optional<CZ> pre_linear(const CZ& Xprev, const Mat& A, const Mat& B, const ReachProblem& problem) {
  if (A.rows() != Xprev.dim() || A.cols() != Xprev.dim() || B.rows() != Xprev.dim() ||
      B.cols() != problem.inputs.dim())
    throw DimensionError("pre_linear: invalid input dimensions.");
  if (condition_number(A) > kSingularCondLimit) throw SingularDynamicsError("pre_linear: A is singular.");
  std::optional<CZ> D = shrink_target(Xprev, problem.disturbance, Zonotope::point(Vec::Zero(Xprev.dim())));
  if (!D) return std::nullopt;
  Mat Ainv = A.inverse();
  CZ X = linear_map(Ainv, minkowski_sum(*D, linear_map(-B, problem.inputs)));
  if (problem.safe.size() != 1) throw std::invalid_argument("pre_linear: expects a single safe piece.");
  std::optional<CZ> cut = intersect_polytope(X, problem.safe.pieces().front());
  if (!cut || is_empty(*cut)) return std::nullopt;
  return cut;
}

std::optional<CZ> pre_xu(const CZ& X, const Mat& A, const Mat& B, const CZ& U, const Zonotope& W,
                         const Zonotope& L, const HPolytope* safe) {
  const Eigen::Index n = X.dim(), q = U.dim();
  if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != q || W.dim() != n || L.dim() != n)
    throw DimensionError("pre_xu: invalid input dimensions.");
  if (condition_number(A) > kInverseCondLimit) return pre_xu_lifted(X, A, B, U, W, L, safe);
  std::optional<CZ> D = shrink_target(X, W, L);
  if (!D) return std::nullopt;
  // [x; u] = [A^-1, -A^-1 B; 0, I] [d; u]
  Mat Ainv = A.inverse();
  Mat M = Mat::Zero(n + q, n + q);
  M.topLeftCorner(n, n) = Ainv;
  M.topRightCorner(n, q) = -Ainv * B;
  M.bottomRightCorner(q, q).setIdentity();
  return finish_pre_xu(linear_map(M, product(*D, U)), q, safe);
}

std::optional<CZ> pre_xu_lifted(const CZ& X, const Mat& A, const Mat& B, const CZ& U, const Zonotope& W,
                                const Zonotope& L, const HPolytope* safe) {
  const Eigen::Index n = X.dim(), q = U.dim();
  if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != q || W.dim() != n || L.dim() != n)
    throw DimensionError("pre_xu: invalid input dimensions.");
  std::optional<CZ> D = shrink_target(X, W, L);
  if (!D) return std::nullopt;

  // bounding box of the x-projection: variables [x, xi_u, theta_d]
  const Eigen::Index nu = U.num_generators(), nd = D->num_generators();
  const Eigen::Index mu = U.num_constraints(), md = D->num_constraints();
  const Eigen::Index nv = n + nu + nd;
  lp::LinearProgram prog(nv);
  prog.lower.tail(nu + nd).setConstant(-1.0);
  prog.upper.tail(nu + nd).setConstant(1.0);
  prog.eq_matrix = Mat::Zero(n + mu + md, nv);
  prog.eq_matrix.block(0, 0, n, n) = A;
  prog.eq_matrix.block(0, n, n, nu) = B * U.generators();
  prog.eq_matrix.block(0, n + nu, n, nd) = -D->generators();
  prog.eq_matrix.block(n, n, mu, nu) = U.constraint_matrix();
  prog.eq_matrix.block(n + mu, n + nu, md, nd) = D->constraint_matrix();
  prog.eq_rhs = Vec(n + mu + md);
  prog.eq_rhs << D->center() - B * U.center(), U.constraint_vector(), D->constraint_vector();
  if (safe != nullptr) {
    prog.ineq_matrix = Mat::Zero(safe->num_rows(), nv);
    prog.ineq_matrix.leftCols(n) = safe->H();
    prog.ineq_rhs = safe->a();
  }
  Vec lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (double s : {1.0, -1.0}) {
      prog.objective.setZero();
      prog.objective(i) = s;
      lp::Solution sol = lp::solve(prog);
      if (sol.status == lp::Status::Infeasible) return std::nullopt;
      if (sol.status == lp::Status::Unbounded) throw UnboundedSetError("pre_xu: the preimage is unbounded.");
      (s > 0 ? lo(i) : hi(i)) = sol.x(i);
    }
  }
  CZ P = product(CZ(Hyperbox(lo, hi.cwiseMax(lo))), U);
  Mat R(n, n + q);
  R << A, B;
  return finish_pre_xu(intersect_mapped(P, *D, R), q, safe);
}

CZ project_x(const CZ& Z, Eigen::Index n) {
  if (n > Z.dim()) throw DimensionError("project_x: invalid input dimensions.");
  Mat P = Mat::Zero(n, Z.dim());
  P.leftCols(n).setIdentity();
  return linear_map(P, Z);
}

ScalingStep scaling_brs_step(const CZ& Xprev, const ReachProblem& problem) {
  const SystemModel& model = problem.model;
  const Eigen::Index n = model.n;
  const HPolytope& safe = problem.safe.pieces().front();
  ScalingStep out;
  out.origin.target = Xprev;

  Vec z_tilde = xu_box(Xprev, problem.inputs).center();
  LinearizedModel lin_t = linearize(model, z_tilde);
  std::optional<CZ> Zt = pre_xu(Xprev, lin_t.A, lin_t.B, problem.inputs, problem.disturbance,
                                Zonotope::point(lin_t.offset), &safe);
  if (!Zt) return out;

  Vec z_star = interval_closure(*Zt).center();
  LinearizedModel lin = linearize(model, z_star);
  Hyperbox Lbox = lagrange_remainder(model, z_star, *Zt);
  const Vec Lc = Lbox.center();
  Vec Lr = Lbox.half_widths();
  out.origin.z_star = z_star;

  for (;;) {
    Zonotope L(Mat(Lr.asDiagonal()), Lc);
    std::optional<CZ> Z = pre_xu(Xprev, lin.A, lin.B, problem.inputs, problem.disturbance, L, &safe);
    if (!Z) return out;
    Hyperbox LE = lagrange_remainder(model, z_star, *Z);
    Hyperbox Lcur(Lc - Lr, Lc + Lr);
    if (Lcur.contains(LE, kBoxInclusionTol)) {
      out.set = project_x(*Z, n);
      out.origin.L = L;
      out.origin.remainder = LE;
      return out;
    }
    if (++out.iterations > problem.max_scale_iters) {
      out.exceeded = true;
      return out;
    }
    // enlarge about the fixed center; a zero half-width cannot grow by scaling alone
    Vec need = (LE.upper() - Lc).cwiseMax(Lc - LE.lower());
    for (Eigen::Index i = 0; i < n; ++i) {
      Lr(i) *= problem.alpha;
      if (Lr(i) == 0.0 && need(i) > 0.0) Lr(i) = need(i);
    }
  }
}

Eigen::Index select_split_generator(const CZ& S, const ReachProblem& problem) {
  const SystemModel& model = problem.model;
  const Eigen::Index n = model.n;
  Vec L_bar = problem.L_bar.size() == 0 ? Vec::Zero(n) : problem.L_bar;
  Hyperbox ubox = interval_closure(problem.inputs);

  auto worst_ratio = [&](const CZ& child) {
    Hyperbox xbox;
    try {
      xbox = interval_closure(child);
    } catch (const EmptySetError&) {
      return 0.0;
    }
    Hyperbox zbox = Hyperbox::product(xbox, ubox);
    Hyperbox rem = remainder_bounds(model, zbox.center(), zbox);
    Vec hw = rem.half_widths();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (hw(i) == 0.0) continue;
      worst = std::max(worst, L_bar(i) > 0.0 ? hw(i) / L_bar(i) : std::numeric_limits<double>::infinity());
    }
    return worst;
  };

  Eigen::Index best = -1;
  double best_rho = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < S.num_generators(); ++j) {
    if (S.generators().col(j).cwiseAbs().maxCoeff() == 0.0) continue;
    auto [c1, c2] = split(S, j);
    double rho = worst_ratio(c1) * worst_ratio(c2);
    if (rho < best_rho) {
      best_rho = rho;
      best = j;
    }
  }
  if (best < 0)
    throw std::runtime_error(
        "select_split_generator: no split can meet the admissible linearization error; increase L_bar");
  return best;
}

std::vector<std::size_t> farthest_point_sample(const std::vector<CZ>& sets, int budget) {
  if (budget < 1) throw std::invalid_argument("farthest_point_sample: budget must be positive");
  std::vector<std::size_t> keep;
  if (sets.size() <= static_cast<std::size_t>(budget)) {
    for (std::size_t i = 0; i < sets.size(); ++i) keep.push_back(i);
    return keep;
  }
  std::vector<Vec> centers;
  std::size_t seed = 0;
  double best_vol = -1.0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Hyperbox b = interval_closure(sets[i]);
    centers.push_back(b.center());
    double v = b.volume();
    if (v > best_vol) {
      best_vol = v;
      seed = i;
    }
  }
  std::vector<double> dist(sets.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> taken(sets.size(), false);
  std::size_t pick = seed;
  for (int k = 0; k < budget; ++k) {
    taken[pick] = true;
    keep.push_back(pick);
    for (std::size_t i = 0; i < sets.size(); ++i) dist[i] = std::min(dist[i], (centers[i] - centers[pick]).norm());
    double far = -1.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (!taken[i] && dist[i] > far) {
        far = dist[i];
        pick = i;
      }
    }
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

namespace {

struct SplitContext {
  const ReachProblem& problem;
  Hyperbox ubox;
  Vec L_bar;
  SplittingStep& out;
};

void process_piece(SplitContext& ctx, const CZ& S, int parent, int depth) {
  const ReachProblem& problem = ctx.problem;
  const SystemModel& model = problem.model;
  Vec z_star = Hyperbox::product(interval_closure(S), ctx.ubox).center();
  LinearizedModel lin = linearize(model, z_star);
  Zonotope L(Mat(ctx.L_bar.asDiagonal()), lin.offset);
  std::optional<CZ> Z = pre_xu(S, lin.A, lin.B, problem.inputs, problem.disturbance, L);
  if (!Z) {
    ++ctx.out.diagnostics.pruned_empty;
    return;
  }
  Hyperbox LE = lagrange_remainder(model, z_star, *Z);
  Hyperbox Lbox(lin.offset - ctx.L_bar, lin.offset + ctx.L_bar);
  if (Lbox.contains(LE, kBoxInclusionTol)) {
    CZ X = project_x(*Z, model.n);
    for (const HPolytope& piece : problem.safe.pieces()) {
      std::optional<CZ> Xp = intersect_polytope(X, piece);
      if (!Xp || is_empty(*Xp)) {
        ++ctx.out.diagnostics.pruned_empty;
        continue;
      }
      ctx.out.sets.push_back(std::move(*Xp));
      ctx.out.origins.push_back(PieceOrigin{parent, S, z_star, L, LE});
    }
    return;
  }
  if (depth >= problem.max_split_depth) {
    ++ctx.out.diagnostics.depth_cap_hits;
    ctx.out.depth_exhausted = true;
    return;
  }
  Eigen::Index j = select_split_generator(S, problem);
  auto [first, second] = split(S, j);
  ++ctx.out.diagnostics.splits;
  for (const CZ* child : {&first, &second}) {
    if (is_empty(*child)) {
      ++ctx.out.diagnostics.pruned_empty;
      continue;
    }
    process_piece(ctx, *child, parent, depth + 1);
  }
}

}  // namespace

SplittingStep splitting_brs_step(const std::vector<CZ>& prev, const ReachProblem& problem) {
  SplittingStep out;
  Vec L_bar = problem.L_bar.size() == 0 ? Vec::Zero(problem.model.n) : problem.L_bar;
  SplitContext ctx{problem, interval_closure(problem.inputs), L_bar, out};
  for (std::size_t i = 0; i < prev.size(); ++i) process_piece(ctx, prev[i], static_cast<int>(i), 0);
  out.diagnostics.candidates = static_cast<int>(out.sets.size());
  std::vector<std::size_t> keep = farthest_point_sample(out.sets, problem.max_branches);
  if (keep.size() < out.sets.size()) {
    std::vector<CZ> sets;
    std::vector<PieceOrigin> origins;
    for (std::size_t k : keep) {
      sets.push_back(std::move(out.sets[k]));
      origins.push_back(std::move(out.origins[k]));
    }
    out.sets = std::move(sets);
    out.origins = std::move(origins);
  }
  return out;
}

ReachResult run(const ReachProblem& problem) {
  problem.validate();
  ReachResult result;
  result.steps.push_back({problem.target});
  result.origins.emplace_back();
  result.diagnostics.emplace_back();
  const SystemModel& model = problem.model;

  for (int k = 1; k <= problem.horizon; ++k) {
    const std::vector<CZ>& prev = result.steps.back();
    std::vector<CZ> sets;
    std::vector<PieceOrigin> origins;
    StepDiagnostics diag;
    bool stop_after = false;

    if (problem.method == Method::Scaling) {
      const CZ& X = prev.front();
      if (model.is_linear) {
        LinearizedModel lin = linearize(model, Vec::Zero(model.n + model.q));
        std::optional<CZ> next = pre_linear(X, lin.A, lin.B, problem);
        if (next) {
          sets.push_back(std::move(*next));
          origins.push_back(PieceOrigin{0, X, Vec(), Zonotope::point(Vec::Zero(model.n)),
                                        Hyperbox(Vec::Zero(model.n), Vec::Zero(model.n))});
        }
      } else {
        ScalingStep step = scaling_brs_step(X, problem);
        diag.scale_iterations = step.iterations;
        if (step.exceeded) {
          result.termination = Termination::ScaleIterExceeded;
          break;
        }
        if (step.set) {
          step.origin.parent = 0;
          sets.push_back(std::move(*step.set));
          origins.push_back(std::move(step.origin));
        }
      }
      diag.candidates = static_cast<int>(sets.size());
    } else {
      SplittingStep step = splitting_brs_step(prev, problem);
      diag = step.diagnostics;
      // pieces that hit the depth cap were dropped; the rest stays sound
      stop_after = step.depth_exhausted && step.sets.empty();
      sets = std::move(step.sets);
      origins = std::move(step.origins);
    }

    if (sets.empty()) {
      result.termination = stop_after ? Termination::BranchBudgetExhausted : Termination::EmptySet;
      break;
    }
    result.steps.push_back(std::move(sets));
    result.origins.push_back(std::move(origins));
    result.diagnostics.push_back(diag);
  }
  return result;
}

}  // namespace czreach
