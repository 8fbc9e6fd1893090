#include "czreach/acceptance.hpp"

#include "czreach/brs.hpp"
#include "czreach/lp.hpp"
#include "czreach/mink_diff.hpp"
#include "czreach/sample.hpp"
#include "czreach/scenarios.hpp"
#include "czreach/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace czreach::acceptance {

namespace {

struct Verdict {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Mat gaussian(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, double scale = 1.0) {
  std::normal_distribution<double> g;
  Mat M(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) M(i, j) = scale * g(rng);
  return M;
}

// constraints pass through an interior parameter, so the set has nonempty interior generically
CZ random_cz(std::mt19937_64& rng, int n, int N, int m) {
  Mat G = gaussian(rng, n, N);
  Mat A = gaussian(rng, m, N);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Vec t(N);
  for (int j = 0; j < N; ++j) t(j) = u(rng);
  return CZ(G, gaussian(rng, n, 1, 0.2).col(0), A, A * t);
}

Zonotope random_zonotope(std::mt19937_64& rng, int n, int N, double scale) {
  return Zonotope(gaussian(rng, n, N, scale), gaussian(rng, n, 1, 0.1 * scale).col(0));
}

HPolytope random_hpoly(std::mt19937_64& rng, int n, int rows) {
  std::normal_distribution<double> g;
  Mat H(rows, n);
  Vec a(rows);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < n; ++j) H(i, j) = g(rng);
    H.row(i).normalize();
    a(i) = 1.0 + 0.5 * std::abs(g(rng));
  }
  return HPolytope(H, a);
}

// ---------------------------------------------------------------------------

Verdict soundness(const Options& o) {
  const double tol = 1e-6 * o.tolerance_scale;
  std::mt19937_64 rng(1001);
  int checked = 0, infeasible = 0, empty = 0;
  long violations = 0, pairs = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 3;
    const int N = uniform_int(rng, n + 1, 12);
    const int m = uniform_int(rng, 0, std::min(3, N - n - 1));
    const int Np = uniform_int(rng, 1, 6);
    CZ S = random_cz(rng, n, N, m);
    Zonotope Z = random_zonotope(rng, n, Np, 0.04 + 0.04 * (t % 4));
    DiffResult r;
    try {
      r = minkdiff_two_step(S, Z);
    } catch (const MinOutInfeasible&) {
      ++infeasible;
      continue;
    }
    if (r.empty || is_empty(r.difference)) {
      ++empty;
      continue;
    }
    ++checked;
    MembershipOracle oracle(S);
    MemberSampler xs(r.difference, 5000 + t), ws(CZ(Z), 9000 + t);
    std::vector<Vec> W = ws.samples(100);
    for (const Vec& x : xs.samples(1000))
      for (const Vec& w : W) {
        ++pairs;
        if (!(oracle.residual(x + w) <= tol)) ++violations;
      }
  }
  return {violations == 0 && checked >= 100,
          fmt("%d instances checked (%d infeasible, %d empty), %ld pairs, %ld violations", checked, infeasible, empty,
              pairs, violations)};
}

Verdict rich_exactness(const Options& o) {
  std::mt19937_64 rng(2002);
  int nonempty = 0, empties = 0, attempts = 0, mismatches = 0;
  double worst = 0.0;
  while (nonempty < 100 && attempts < 400) {
    ++attempts;
    const int n = 2 + attempts % 2;
    HPolytope P = random_hpoly(rng, n, n == 2 ? uniform_int(rng, 5, 8) : uniform_int(rng, 6, 10));
    const bool wide = attempts % 5 == 0;
    Zonotope Z = random_zonotope(rng, n, uniform_int(rng, 2, 4), wide ? 1.5 : 0.12);
    DiffResult r;
    try {
      r = minkdiff_exact_via_rich(P, Z);
    } catch (const UnboundedSetError&) {
      continue;
    }
    HPolytope D = exact_hrep_diff(P, Z);
    const bool oracle_empty = is_empty(D);
    if (r.empty || oracle_empty) {
      if (r.empty != oracle_empty) ++mismatches;
      ++empties;
      continue;
    }
    ++nonempty;
    for (const Vec& h : unit_directions(n, 64, 77 + attempts)) {
      double sd = support(D, h);
      double gap = std::abs(support(r.difference, h) - sd) / std::max(1.0, std::abs(sd));
      worst = std::max(worst, gap);
      if (!(gap <= 1e-5 * o.tolerance_scale)) ++mismatches;
    }
  }
  return {mismatches == 0 && nonempty == 100,
          fmt("%d nonempty instances, %d empty verdicts, worst support gap %.2e, %d mismatches", nonempty, empties,
              worst, mismatches)};
}

Verdict gap_reproduction(const Options& o) {
  const double tol = 1e-6 * o.tolerance_scale;
  GapExample ex = gap_example();
  DiffResult r = step_two(ex.minuend, ex.shrink);
  const CZ& Cs = r.enclosing;
  std::vector<Vec> pts;
  for (const Vec& h : unit_directions(2, 256, 3)) pts.push_back(support_point(Cs, h).point);
  MemberSampler cs(Cs, 4);
  for (const Vec& v : cs.samples(200)) pts.push_back(v);
  DiffGrid grid = brute_force_diff_2d(ex.minuend, pts, 200, tol);
  HitTester in_d(r.difference, tol);
  MembershipOracle exact_d(r.difference);
  int gap_points = 0, outside = 0, in_oracle = 0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const bool oracle = grid.in_difference[i];
    const bool d = in_d.contains(grid.points[i]);
    in_oracle += oracle;
    if (d && !oracle) ++outside;
    // a gap point must be clearly outside the computed difference
    if (oracle && !d && exact_d.residual(grid.points[i]) > 1e3 * std::abs(tol)) ++gap_points;
  }
  // sampled members of the computed difference satisfy the predicate too
  HitTester in_minuend(ex.minuend, tol);
  int sample_violations = 0;
  MemberSampler ds(r.difference, 5);
  for (const Vec& x : ds.samples(500))
    for (const Vec& v : pts)
      if (!in_minuend.contains(x + v)) {
        ++sample_violations;
        break;
      }
  return {gap_points >= 1 && outside == 0 && sample_violations == 0,
          fmt("%d oracle grid points, %d in the gap, %d computed points outside the oracle, %d sampled violations",
              in_oracle, gap_points, outside, sample_violations)};
}

Verdict integrator_volume(const Options& o) {
  ReachProblem p = double_integrator_problem(100);
  ReachResult r = run(p);
  const int last = static_cast<int>(r.steps.size()) - 1;
  double vol = 0.0, se = 0.0;
  if (last == 100) {
    VolumeEstimate v = mc_volume_union(r.steps[100], 100000, 42);
    vol = v.value;
    se = v.std_error;
  }
  // exact planar recursion for context
  LinearizedModel lin = linearize(p.model, Vec::Zero(p.model.n + p.model.q));
  Hyperbox tb = interval_closure(p.target);
  Polygon2 target;
  for (int k = 0; k < 4; ++k) {
    Vec v(2);
    v << ((k == 1 || k == 2) ? tb.upper()(0) : tb.lower()(0)), (k >= 2 ? tb.upper()(1) : tb.lower()(1));
    target.push_back(v);
  }
  std::vector<Polygon2> exact =
      exact_linear_brs_2d(lin.A, lin.B, target, p.model.default_inputs, p.disturbance, p.safe.pieces().front(), 100);
  int exact_last = 0;
  while (exact_last + 1 < static_cast<int>(exact.size()) && !exact[exact_last + 1].empty()) ++exact_last;
  const double ref = 28.343;
  const bool ok = last == 100 && std::abs(vol - ref) <= 0.07 * ref * o.tolerance_scale && vol > 7.810;
  return {ok, fmt("last nonempty step %d (%s), volume %.3f +- %.3f vs 28.343 +- 7%%; exact polygon recursion "
                  "is nonempty up to step %d",
                  last, to_string(r.termination), vol, se, exact_last)};
}

Verdict certificates(const Options& o) {
  const double tol = 1e-6 * o.tolerance_scale;
  ReachProblem ip = double_integrator_problem(100);
  ReachResult ir = run(ip);
  ClosedLoopStats a = closed_loop_check(ip, ir, 200, tol, 31);
  const bool lin_ok = a.samples > 0 && a.certified == a.samples && a.successor == a.samples;

  ReachProblem dp = dubins_obstacle_problem(10);
  ReachResult dr = run(dp);
  ClosedLoopStats b = closed_loop_check(dp, dr, 200, tol, 57);
  const double rate = b.samples ? static_cast<double>(b.successor) / b.samples : 0.0;
  const bool dub_ok = dr.steps.size() == 11 && rate >= 0.99 && b.error_in_L == b.certified && b.certified > 0;
  return {lin_ok && dub_ok,
          fmt("integrator: %ld/%ld certified over %d steps; Dubins: %ld/%ld certified, %ld pass the successor "
              "check (%.2f%%), %ld/%ld with error inside L, %zu steps",
              a.certified, a.samples, a.steps, b.certified, b.samples, b.successor, 100.0 * rate, b.error_in_L,
              b.certified, dr.steps.size() - 1)};
}

Verdict split_identity(const Options& o) {
  const double tol = 1e-7 * o.tolerance_scale;
  std::mt19937_64 rng(6006);
  long parent_miss = 0, child_miss = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + t % 2;
    const int N = uniform_int(rng, n + 1, 7);
    const int m = uniform_int(rng, 0, std::min(2, N - n - 1));
    CZ S = random_cz(rng, n, N, m);
    const Eigen::Index j = uniform_int(rng, 0, N - 1);
    auto [c1, c2] = split(S, j);
    MembershipOracle o1(c1), o2(c2), op(S);
    MemberSampler ps(S, 100 + t);
    for (const Vec& x : ps.samples(2000))
      if (!(o1.residual(x) <= tol || o2.residual(x) <= tol)) ++parent_miss;
    for (const CZ* c : {&c1, &c2}) {
      if (is_empty(*c)) continue;
      MemberSampler cs(*c, 200 + t);
      for (const Vec& x : cs.samples(1000))
        if (!(op.residual(x) <= tol)) ++child_miss;
    }
  }
  return {parent_miss == 0 && child_miss == 0,
          fmt("500 sets; %ld parent samples outside both children, %ld child samples outside the parent", parent_miss,
              child_miss)};
}

Verdict full_lp_equivalence(const Options& o) {
  std::mt19937_64 rng(7007);
  int agree = 0, both_infeasible = 0, disagree = 0;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 2;
    const int N = uniform_int(rng, n + 1, n + 3);
    const int m = uniform_int(rng, 0, std::min(1, N - n - 1));
    CZ S = random_cz(rng, n, N, m);
    Zonotope Z = random_zonotope(rng, n, n, 0.1);
    std::optional<double> simple;
    try {
      simple = min_out_simple(S, Z).sigma_bar.sum();
    } catch (const MinOutInfeasible&) {
    }
    std::optional<double> full = min_out_full_objective(S, Z);
    if (!simple && !full) {
      ++both_infeasible;
      continue;
    }
    if (!simple || !full) {
      ++disagree;
      continue;
    }
    double gap = std::abs(*simple - *full);
    worst = std::max(worst, gap);
    if (gap <= 1e-6 * o.tolerance_scale)
      ++agree;
    else
      ++disagree;
  }
  return {disagree == 0 && agree >= 25,
          fmt("%d optima agree, %d jointly infeasible, %d disagree, worst gap %.2e", agree, both_infeasible, disagree,
              worst)};
}

Verdict enrichment_invariance(const Options& o) {
  const double tol = 1e-5 * o.tolerance_scale;
  std::mt19937_64 rng(8008);
  int checked = 0, skipped = 0, diff_mismatch = 0, enclosure_violations = 0;
  double worst = 0.0;
  int t = 0;
  while (checked < 50 && t < 200) {
    ++t;
    const int n = 2 + t % 2;
    const int N = uniform_int(rng, n + 1, n + 4);
    const int m = uniform_int(rng, 0, std::min(2, N - n - 1));
    CZ S = random_cz(rng, n, N, m);
    Zonotope Z = random_zonotope(rng, n, uniform_int(rng, n, n + 2), 0.08);
    Vec h = unit_directions(n, 1, 900 + t).front();
    const double lo = -support(S, -h), hi = support(S, h);
    const double a = hi + (t % 3 == 0 ? 0.0 : 0.3 * (hi - lo));
    CZ E = enrich_halfspace(S, h, a);
    DiffResult r0, r1;
    try {
      r0 = minkdiff_two_step(S, Z);
      if (r0.empty || is_empty(r0.difference)) {
        ++skipped;
        continue;
      }
      r1 = minkdiff_two_step(E, Z);
    } catch (const MinOutInfeasible&) {
      ++skipped;
      continue;
    }
    ++checked;
    for (const Vec& d : unit_directions(n, 64, 300 + t)) {
      double s0 = support(r0.difference, d);
      double gap = std::abs(support(r1.difference, d) - s0) / std::max(1.0, std::abs(s0));
      worst = std::max(worst, gap);
      if (!(gap <= tol)) ++diff_mismatch;
    }
    const double a_low = support(Z, h);
    MembershipOracle in_cs(r0.enclosing);
    MemberSampler es(r1.enclosing, 400 + t);
    for (const Vec& x : es.samples(200))
      if (!(in_cs.residual(x) <= 1e-7 * o.tolerance_scale && h.dot(x) <= a_low + 1e-7 * o.tolerance_scale))
        ++enclosure_violations;
  }
  return {checked == 50 && diff_mismatch == 0 && enclosure_violations == 0,
          fmt("%d instances (%d skipped), worst difference support gap %.2e, %d mismatches, %d enclosure violations",
              checked, skipped, worst, diff_mismatch, enclosure_violations)};
}

Verdict minkowski_properties(const Options& o) {
  const double tol = 1e-6 * o.tolerance_scale;
  std::mt19937_64 rng(9009);
  int eq_fail = 0, ii_fail = 0, iii_fail = 0, iv_fail = 0, skipped = 0;
  long points = 0;
  for (int t = 0; t < 100; ++t) {
    CZ A = random_cz(rng, 3, 6, t % 2);
    CZ B = random_cz(rng, 3, 5, t % 3 == 0 ? 1 : 0);
    Zonotope Bz = random_zonotope(rng, 3, 3, 0.08);
    Zonotope C = random_zonotope(rng, 3, 2, 0.08);
    Mat M = gaussian(rng, 2, 3);

    // i) M(A + B) = MA + MB
    CZ lhs = linear_map(M, minkowski_sum(A, B));
    CZ rhs = minkowski_sum(linear_map(M, A), linear_map(M, B));
    for (const Vec& h : unit_directions(2, 16, 50 + t))
      if (!(std::abs(support(lhs, h) - support(rhs, h)) <= tol * std::max(1.0, std::abs(support(rhs, h))))) ++eq_fail;

    DiffResult dAB, dAC, dBC;
    try {
      dAB = minkdiff_two_step(A, Bz);
      dAC = minkdiff_two_step(A, C);
      dBC = minkdiff_two_step(B, C);
    } catch (const MinOutInfeasible&) {
      ++skipped;
      continue;
    }

    // ii) M(A - B) inside MA - MB
    if (!is_empty(dAB.difference)) {
      CZ MA = linear_map(M, A);
      MembershipOracle in_MA(MA);
      MemberSampler ys(linear_map(M, dAB.difference), 10 + t), bs(CZ(linear_map(M, Bz)), 20 + t);
      std::vector<Vec> MB = bs.samples(20);
      for (const Vec& y : ys.samples(100)) {
        ++points;
        for (const Vec& b : MB)
          if (!(in_MA.residual(y + b) <= tol)) {
            ++ii_fail;
            break;
          }
      }
    }
    // iii) (A - C) u (B - C) inside (A u B) - C
    {
      MembershipOracle inA(A), inB(B);
      MemberSampler cs(CZ(C), 30 + t);
      std::vector<Vec> Cs = cs.samples(20);
      for (const DiffResult* d : {&dAC, &dBC}) {
        if (is_empty(d->difference)) continue;
        MemberSampler xs(d->difference, 40 + t);
        for (const Vec& x : xs.samples(100)) {
          ++points;
          for (const Vec& c : Cs)
            if (!(inA.residual(x + c) <= tol || inB.residual(x + c) <= tol)) {
              ++iii_fail;
              break;
            }
        }
      }
    }
    // iv) (A - B) + C inside (A + C) - B
    if (!is_empty(dAB.difference)) {
      MembershipOracle inAC(minkowski_sum(A, CZ(C)));
      MemberSampler xs(minkowski_sum(dAB.difference, CZ(C)), 60 + t), bs(CZ(Bz), 70 + t);
      std::vector<Vec> Bs = bs.samples(20);
      for (const Vec& x : xs.samples(100)) {
        ++points;
        for (const Vec& b : Bs)
          if (!(inAC.residual(x + b) <= tol)) {
            ++iv_fail;
            break;
          }
      }
    }
  }
  return {eq_fail + ii_fail + iii_fail + iv_fail == 0 && skipped < 50,
          fmt("100 triples (%d without a shrink solution), %ld sampled points; failures i) %d ii) %d iii) %d iv) %d",
              skipped, points, eq_fail, ii_fail, iii_fail, iv_fail)};
}

Verdict tank_smoke(const Options& o) {
  ReachProblem p = tank_problem(20);
  ReachResult r = run(p);
  bool nonempty = r.steps.size() == 21;
  for (const auto& s : r.steps) nonempty = nonempty && !s.empty();
  ClosedLoopStats st = closed_loop_check(p, r, 50, 1e-6 * o.tolerance_scale, 91);
  const bool ok = nonempty && st.samples > 0 && st.certified == st.samples && st.successor == st.samples &&
                  st.error_in_L == st.samples;
  return {ok, fmt("%zu steps (%s), %ld/%ld certified, %ld successor checks, %ld with error inside L", r.steps.size() - 1,
                  to_string(r.termination), st.certified, st.samples, st.successor, st.error_in_L)};
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "difference soundness", 120.0},
      {2, "exactness on rich representations", 120.0},
      {3, "gap between the two-step result and the enclosure difference", 30.0},
      {4, "double integrator volume at step 100", 300.0},
      {5, "closed-loop certificates", 600.0},
      {6, "split identity", 60.0},
      {7, "reduced shrink LP matches the full LP", 60.0},
      {8, "enrichment invariance", 120.0},
      {9, "Minkowski algebra properties", 60.0},
      {10, "tank smoke run", 900.0},
  };
  return list;
}

Outcome run_criterion(int id, const Options& opts) {
  const auto& list = criteria();
  auto it = std::find_if(list.begin(), list.end(), [&](const Criterion& c) { return c.id == id; });
  if (it == list.end()) throw std::invalid_argument("unknown acceptance criterion " + std::to_string(id));
  Outcome out;
  out.id = id;
  out.name = it->name;
  out.budget_seconds = it->budget_seconds;
  static const std::map<int, Verdict (*)(const Options&)> fns = {
      {1, soundness},         {2, rich_exactness},        {3, gap_reproduction},      {4, integrator_volume},
      {5, certificates},      {6, split_identity},        {7, full_lp_equivalence},   {8, enrichment_invariance},
      {9, minkowski_properties}, {10, tank_smoke},
  };
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = fns.at(id)(opts);
  } catch (const std::exception& e) {
    v = {false, std::string("error: ") + e.what()};
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.passed = v.ok && out.seconds <= out.budget_seconds;
  out.detail = v.detail;
  if (out.seconds > out.budget_seconds) out.detail += fmt("; over the %.0f s budget", out.budget_seconds);
  return out;
}

std::optional<double> min_out_full_objective(const CZ& minuend, const Zonotope& subtrahend) {
  const Mat& G = minuend.generators();
  const Mat& A = minuend.constraint_matrix();
  const Mat& Gp = subtrahend.generators();
  const Eigen::Index n = minuend.dim(), N = G.cols(), m = A.rows(), Np = Gp.cols();
  const Eigen::Index R = 2 * m + 2 * N;
  Mat T(R, N);  // [A; -A; I; -I]
  T << A, -A, Mat::Identity(N, N), -Mat::Identity(N, N);

  // layout: sigma | c_s | b_s | Gamma (column-major) | beta | Lambda (column-major, R x 2Np)
  const Eigen::Index o_sig = 0, o_cs = N, o_bs = o_cs + n, o_gam = o_bs + m, o_beta = o_gam + N * Np,
                     o_lam = o_beta + N, nv = o_lam + R * 2 * Np;
  auto gam = [&](Eigen::Index j, Eigen::Index k) { return o_gam + k * N + j; };
  auto lam = [&](Eigen::Index r, Eigen::Index l) { return o_lam + l * R + r; };

  lp::LinearProgram prog(nv);
  prog.objective.setZero();
  prog.objective.segment(o_sig, N).setOnes();
  prog.lower.setConstant(-lp::kInf);
  prog.upper.setConstant(lp::kInf);
  prog.lower.segment(o_sig, N).setZero();
  prog.upper.segment(o_sig, N).setOnes();
  prog.lower.segment(o_lam, R * 2 * Np).setZero();

  const Eigen::Index n_eq = n * Np + n + R * Np;
  prog.eq_matrix = Mat::Zero(n_eq, nv);
  prog.eq_rhs = Vec::Zero(n_eq);
  Eigen::Index row = 0;
  for (Eigen::Index k = 0; k < Np; ++k)
    for (Eigen::Index i = 0; i < n; ++i, ++row) {
      for (Eigen::Index j = 0; j < N; ++j) prog.eq_matrix(row, gam(j, k)) = G(i, j);
      prog.eq_rhs(row) = Gp(i, k);
    }
  for (Eigen::Index i = 0; i < n; ++i, ++row) {
    for (Eigen::Index j = 0; j < N; ++j) prog.eq_matrix(row, o_beta + j) = G(i, j);
    prog.eq_matrix(row, o_cs + i) = -1.0;
    prog.eq_rhs(row) = -subtrahend.center()(i);
  }
  for (Eigen::Index k = 0; k < Np; ++k)
    for (Eigen::Index r = 0; r < R; ++r, ++row) {
      prog.eq_matrix(row, lam(r, k)) = 1.0;
      prog.eq_matrix(row, lam(r, Np + k)) = -1.0;
      for (Eigen::Index j = 0; j < N; ++j) prog.eq_matrix(row, gam(j, k)) = -T(r, j);
    }

  prog.ineq_matrix = Mat::Zero(R, nv);
  prog.ineq_rhs = Vec::Zero(R);
  for (Eigen::Index r = 0; r < R; ++r) {
    for (Eigen::Index l = 0; l < 2 * Np; ++l) prog.ineq_matrix(r, lam(r, l)) = 1.0;
    for (Eigen::Index j = 0; j < N; ++j) prog.ineq_matrix(r, o_beta + j) = -T(r, j);
    if (r < m)
      prog.ineq_matrix(r, o_bs + r) = -1.0;
    else if (r < 2 * m)
      prog.ineq_matrix(r, o_bs + r - m) = 1.0;
    else if (r < 2 * m + N)
      prog.ineq_matrix(r, o_sig + r - 2 * m) = -1.0;
    else
      prog.ineq_matrix(r, o_sig + r - 2 * m - N) = -1.0;
  }

  lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  return sol.objective_value;
}

}  // namespace czreach::acceptance
