#include "czreach/validation.hpp"

#include "czreach/mink_diff.hpp"
#include "czreach/sample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace czreach {

namespace {

constexpr int kMaxPolygonDepth = 40;
constexpr int kOuterDirections = 32;

double cross2(const Vec& a, const Vec& b) { return a(0) * b(1) - a(1) * b(0); }

double box_scale(const Hyperbox& box) {
  return 1.0 + std::max(box.lower().cwiseAbs().maxCoeff(), box.upper().cwiseAbs().maxCoeff());
}

// support points strictly between directions ha and hb, appended in order
void refine_edge(const CZ& S, const Vec& pa, const Vec& pb, double eps, int depth, std::vector<Vec>& out) {
  Vec e = pb - pa;
  if (e.norm() <= eps || depth > kMaxPolygonDepth) return;
  Vec normal(2);
  normal << e(1), -e(0);
  normal /= normal.norm();
  SupportPoint sp = support_point(S, normal);
  if (sp.value <= normal.dot(pa) + eps) return;
  refine_edge(S, pa, sp.point, eps, depth + 1, out);
  out.push_back(sp.point);
  refine_edge(S, sp.point, pb, eps, depth + 1, out);
}

// minimum signed distance to the edges of a ccw polygon (positive inside)
double polygon_margin(const std::vector<Vec>& poly, const Vec& x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % poly.size()];
    Vec e = q - p;
    m = std::min(m, cross2(e, x - p) / e.norm());
  }
  return m;
}

std::vector<Vec> zonotope_points(const Zonotope& Z, std::uint64_t seed) {
  const Eigen::Index N = Z.num_generators();
  if (N > 20) throw std::invalid_argument("brute_force_diff_2d: too many subtrahend generators to enumerate");
  std::vector<Vec> pts;
  for (long mask = 0; mask < (1L << N); ++mask) {
    Vec theta(N);
    for (Eigen::Index j = 0; j < N; ++j) theta(j) = (mask >> j) & 1 ? 1.0 : -1.0;
    pts.push_back(Z.generators() * theta + Z.center());
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    Vec theta(N);
    for (Eigen::Index j = 0; j < N; ++j) theta(j) = unit(rng);
    pts.push_back(Z.generators() * theta + Z.center());
  }
  return pts;
}

}  // namespace

std::vector<Vec> polygon_vertices_2d(const CZ& S) {
  if (S.dim() != 2) throw DimensionError("polygon_vertices_2d: set must be planar.");
  Hyperbox box = interval_closure(S);  // throws EmptySetError
  const double eps = 1e-10 * box_scale(box);
  std::vector<Vec> anchors;
  // +e1, +e2, -e1, -e2: counter-clockwise
  for (int k = 0; k < 4; ++k) anchors.push_back(support_point(S, (k < 2 ? 1.0 : -1.0) * Vec::Unit(2, k % 2)).point);
  std::vector<Vec> raw;
  for (int k = 0; k < 4; ++k) {
    raw.push_back(anchors[k]);
    refine_edge(S, anchors[k], anchors[(k + 1) % 4], eps, 0, raw);
  }
  std::vector<Vec> out;
  for (const Vec& p : raw)
    if (out.empty() || (p - out.back()).norm() > eps) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() <= eps) out.pop_back();
  return out;
}

double polygon_area(const std::vector<Vec>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross2(v[i], v[(i + 1) % v.size()]);
  return 0.5 * std::abs(a);
}

HitTester::HitTester(const CZ& S, double tol) : set_(S), tol_(tol), box_(interval_closure(S)), oracle_(S) {
  const double scale = box_scale(box_);
  if (S.dim() == 2) {
    std::vector<Vec> poly = polygon_vertices_2d(S);
    if (poly.size() >= 3 && polygon_area(poly) > 1e-10 * scale * scale) polygon_ = std::move(poly);
  }
  if (polygon_.empty() && S.dim() > 1) {
    std::vector<Vec> dirs = unit_directions(S.dim(), kOuterDirections, 7);
    outer_H_ = Mat(static_cast<Eigen::Index>(dirs.size()), S.dim());
    outer_a_ = Vec(static_cast<Eigen::Index>(dirs.size()));
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      outer_H_.row(static_cast<Eigen::Index>(k)) = dirs[k].transpose();
      outer_a_(static_cast<Eigen::Index>(k)) = support(S, dirs[k]);
    }
  }
}

bool HitTester::contains(const Vec& x) {
  const double scale = box_scale(box_);
  const double band = 1e-6 * scale;
  if (!box_.contains(x, band)) return false;
  if (!polygon_.empty()) {
    double m = polygon_margin(polygon_, x);
    if (m > band) return true;
    if (m < -band) return false;
  } else if (outer_H_.rows() > 0) {
    if (((outer_H_ * x - outer_a_).array() > band).any()) return false;
  }
  ++lp_calls_;
  return oracle_.contains(x, tol_);
}

VolumeEstimate mc_volume(const CZ& S, long samples, std::uint64_t seed) {
  return mc_volume_union({S}, samples, seed);
}

VolumeEstimate mc_volume_union(const std::vector<CZ>& sets, long samples, std::uint64_t seed) {
  if (sets.empty()) throw EmptySetError("mc_volume: no sets given.");
  if (samples < 1000) throw std::invalid_argument("mc_volume: at least 1000 samples are required.");
  std::vector<HitTester> testers;
  Hyperbox hull;
  for (const CZ& S : sets) {
    if (is_empty(S)) throw EmptySetError("mc_volume: set is empty.");
    testers.emplace_back(S);
    hull = testers.size() == 1 ? testers.back().box() : Hyperbox::hull(hull, testers.back().box());
  }
  VolumeEstimate est;
  est.samples = samples;
  est.bounding_box = hull;
  const double V = hull.volume();
  if (V == 0.0) return est;

  std::mt19937_64 rng(seed);
  const Eigen::Index n = hull.dim();
  std::vector<std::uniform_real_distribution<double>> coord;
  for (Eigen::Index i = 0; i < n; ++i) coord.emplace_back(hull.lower()(i), hull.upper()(i));
  long hits = 0;
  Vec x(n);
  for (long s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = coord[static_cast<std::size_t>(i)](rng);
    for (HitTester& t : testers) {
      if (t.contains(x)) {
        ++hits;
        break;
      }
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  est.value = p * V;
  est.std_error = V * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

DiffGrid brute_force_diff_2d(const CZ& minuend, const std::vector<Vec>& subtrahend_points, int resolution,
                             double tol) {
  if (minuend.dim() != 2) throw DimensionError("brute_force_diff_2d: minuend must be 2-D.");
  for (const Vec& v : subtrahend_points)
    if (v.size() != 2) throw DimensionError("brute_force_diff_2d: subtrahend must be 2-D.");
  if (resolution < 2) throw std::invalid_argument("brute_force_diff_2d: resolution must be at least 2.");
  HitTester tester(minuend, tol);
  const Hyperbox& box = tester.box();
  DiffGrid grid;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      Vec x(2);
      x(0) = box.lower()(0) + (box.upper()(0) - box.lower()(0)) * i / (resolution - 1);
      x(1) = box.lower()(1) + (box.upper()(1) - box.lower()(1)) * j / (resolution - 1);
      bool inside = true;
      for (const Vec& v : subtrahend_points) {
        if (!tester.contains(x + v)) {
          inside = false;
          break;
        }
      }
      grid.points.push_back(x);
      grid.in_difference.push_back(inside ? 1 : 0);
    }
  }
  return grid;
}

DiffGrid brute_force_diff_2d(const CZ& minuend, const Zonotope& subtrahend, int resolution, std::uint64_t seed,
                             double tol) {
  if (minuend.dim() != 2 || subtrahend.dim() != 2) throw DimensionError("brute_force_diff_2d: sets must be 2-D.");
  return brute_force_diff_2d(minuend, zonotope_points(subtrahend, seed), resolution, tol);
}

std::vector<Vec> unit_directions(Eigen::Index n, int count, std::uint64_t seed) {
  std::vector<Vec> dirs;
  for (Eigen::Index i = 0; i < n && static_cast<int>(dirs.size()) < count; ++i) {
    dirs.push_back(Vec::Unit(n, i));
    if (static_cast<int>(dirs.size()) < count) dirs.push_back(-Vec::Unit(n, i));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  while (static_cast<int>(dirs.size()) < count) {
    Vec d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = gauss(rng);
    if (d.norm() < 1e-8) continue;
    dirs.push_back(d / d.norm());
  }
  return dirs;
}

double max_support_gap(const CZ& a, const CZ& b, const std::vector<Vec>& dirs) {
  double gap = 0.0;
  for (const Vec& d : dirs) gap = std::max(gap, std::abs(support(a, d) - support(b, d)));
  return gap;
}

double max_support_gap(const CZ& a, const HPolytope& b, const std::vector<Vec>& dirs) {
  double gap = 0.0;
  for (const Vec& d : dirs) gap = std::max(gap, std::abs(support(a, d) - support(b, d)));
  return gap;
}

CertificateChecker::CertificateChecker(const SystemModel& model, const Vec& z_star, const CZ& Xtarget, const CZ& U,
                                       const Zonotope& W, const Zonotope& L)
    : U_(U) {
  const Eigen::Index n = model.n;
  if (Xtarget.dim() != n || U.dim() != model.q || W.dim() != n || L.dim() != n)
    throw DimensionError("control_certificate: invalid input dimensions.");
  lin_ = linearize(model, z_star.size() == 0 ? Vec::Zero(model.n + model.q) : z_star);
  try {
    D_ = minkdiff_two_step(Xtarget, minkowski_sum(L, W)).difference;
    vacuous_ = is_empty(D_);
  } catch (const MinOutInfeasible&) {
    vacuous_ = true;
  }
}

Certificate CertificateChecker::check(const Vec& x) const {
  Certificate cert;
  if (vacuous_) return cert;
  const Eigen::Index n = lin_.A.rows();
  if (x.size() != n) throw DimensionError("control_certificate: state has the wrong dimension.");
  const Eigen::Index nu = U_.num_generators(), nd = D_.num_generators();
  const Eigen::Index mu = U_.num_constraints(), md = D_.num_constraints();
  // variables [xi_u, theta_d, r+, r-]; minimize the residual of A x + B u = d
  const Eigen::Index nv = nu + nd + 2 * n;
  lp::LinearProgram prog(nv);
  prog.lower.head(nu + nd).setConstant(-1.0);
  prog.upper.head(nu + nd).setConstant(1.0);
  prog.lower.tail(2 * n).setZero();
  prog.objective.tail(2 * n).setOnes();
  prog.eq_matrix = Mat::Zero(n + mu + md, nv);
  prog.eq_matrix.block(0, 0, n, nu) = lin_.B * U_.generators();
  prog.eq_matrix.block(0, nu, n, nd) = -D_.generators();
  prog.eq_matrix.block(0, nu + nd, n, n).setIdentity();
  prog.eq_matrix.block(0, nu + nd + n, n, n) = -Mat::Identity(n, n);
  prog.eq_matrix.block(n, 0, mu, nu) = U_.constraint_matrix();
  prog.eq_matrix.block(n + mu, nu, md, nd) = D_.constraint_matrix();
  prog.eq_rhs = Vec(n + mu + md);
  prog.eq_rhs << D_.center() - lin_.A * x - lin_.B * U_.center(), U_.constraint_vector(), D_.constraint_vector();
  lp::Solution sol = lp::solve(prog);
  if (sol.status != lp::Status::Optimal) return cert;
  cert.residual = sol.objective_value;
  cert.u = U_.generators() * sol.x.head(nu) + U_.center();
  cert.certified = cert.residual <= lp::kFeasibilityTol * (1.0 + prog.eq_rhs.head(n).cwiseAbs().maxCoeff());
  return cert;
}

std::vector<Vec> zonotope_vertices(const Zonotope& Z, int max_patterns, std::uint64_t seed) {
  const Eigen::Index N = Z.num_generators();
  std::vector<Vec> out;
  if (N <= 20 && (1L << N) <= max_patterns) {
    for (long mask = 0; mask < (1L << N); ++mask) {
      Vec s(N);
      for (Eigen::Index j = 0; j < N; ++j) s(j) = (mask >> j) & 1 ? 1.0 : -1.0;
      out.push_back(Z.center() + Z.generators() * s);
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin;
  for (int k = 0; k < max_patterns; ++k) {
    Vec s(N);
    for (Eigen::Index j = 0; j < N; ++j) s(j) = coin(rng) ? 1.0 : -1.0;
    out.push_back(Z.center() + Z.generators() * s);
  }
  return out;
}

ClosedLoopStats closed_loop_check(const ReachProblem& p, const ReachResult& r, int per_step, double tol,
                                  std::uint64_t seed) {
  ClosedLoopStats st;
  std::vector<Vec> corners = zonotope_vertices(p.disturbance, 32, seed);
  for (std::size_t k = 1; k < r.steps.size(); ++k) {
    ++st.steps;
    const auto& sets = r.steps[k];
    const int count = static_cast<int>(sets.size());
    const int per_piece = std::max(1, (per_step + count - 1) / count);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const PieceOrigin& o = r.origins[k][i];
      CertificateChecker cert(p.model, o.z_star, o.target, p.inputs, p.disturbance, o.L);
      MembershipOracle in_target(o.target);
      Hyperbox Lb = interval_closure(o.L);
      const bool stored_ok = Lb.contains(o.remainder.lower(), 1e-12) && Lb.contains(o.remainder.upper(), 1e-12);
      LinearizedModel lin = linearize(p.model, o.z_star.size() == 0 ? Vec::Zero(p.model.n + p.model.q) : o.z_star);
      MemberSampler s(sets[i], seed + 1000 * k + i);
      for (const Vec& x : s.samples(per_piece)) {
        ++st.samples;
        Certificate c = cert.check(x);
        if (!c.certified) continue;
        ++st.certified;
        Vec fx = successor(p.model, x, c.u);
        Vec e = fx - lin.A * x - lin.B * c.u;
        if (stored_ok && Lb.contains(e, 1e-9)) ++st.error_in_L;
        bool all = true;
        for (const Vec& w : corners)
          if (!(in_target.residual(fx + w) <= tol)) {
            all = false;
            break;
          }
        st.successor += all;
      }
    }
  }
  return st;
}

Certificate control_certificate(const Vec& x, const SystemModel& model, const Vec& z_star, const CZ& Xtarget,
                                const CZ& U, const Zonotope& W, const Zonotope& L) {
  return CertificateChecker(model, z_star, Xtarget, U, W, L).check(x);
}

}  // namespace czreach

namespace czreach {

Polygon2 convex_hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec& a, const Vec& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); });
  if (pts.size() < 3) return pts;
  Polygon2 hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vec& o, const Vec& a, const Vec& b) { return cross2(a - o, b - o); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Polygon2 clip_halfplane(const Polygon2& poly, const Vec& h, double a) {
  Polygon2 out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % n];
    double sp = h.dot(p) - a, sq = h.dot(q) - a;
    if (sp <= 0) out.push_back(p);
    if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
  }
  if (out.size() < 3 || polygon_area(out) <= 0.0) return {};
  return out;
}

bool polygon_contains(const Polygon2& poly, const Vec& x, double tol) {
  return poly.size() >= 3 && polygon_margin(poly, x) >= -tol;
}

std::vector<Polygon2> exact_linear_brs_2d(const Mat& A, const Mat& B, const Polygon2& target, const Hyperbox& U,
                                          const Zonotope& W, const HPolytope& safe, int horizon) {
  if (A.rows() != 2 || A.cols() != 2 || B.rows() != 2 || B.cols() != U.dim() || W.dim() != 2 || safe.dim() != 2)
    throw DimensionError("exact_linear_brs_2d: invalid input dimensions.");
  const Mat Ainv = A.inverse();
  const bool flips = A.determinant() < 0.0;
  // vertices of -B U
  std::vector<Vec> shifts;
  const Eigen::Index q = U.dim();
  for (long mask = 0; mask < (1L << q); ++mask) {
    Vec u(q);
    for (Eigen::Index j = 0; j < q; ++j) u(j) = (mask >> j) & 1 ? U.upper()(j) : U.lower()(j);
    shifts.push_back(-B * u);
  }
  std::vector<Polygon2> out{target};
  for (int k = 1; k <= horizon; ++k) {
    const Polygon2& X = out.back();
    if (X.empty()) break;
    // X - W: shift every edge inward by the support of W along its normal
    Polygon2 D = X;
    for (std::size_t i = 0; i < X.size() && !D.empty(); ++i) {
      Vec e = X[(i + 1) % X.size()] - X[i];
      Vec h(2);
      h << e(1), -e(0);
      D = clip_halfplane(D, h, h.dot(X[i]) - support(W, h));
    }
    Polygon2 next;
    if (!D.empty()) {
      std::vector<Vec> pts;
      for (const Vec& p : D)
        for (const Vec& s : shifts) pts.push_back(Ainv * (p + s));
      next = convex_hull_2d(pts);
      if (flips) std::reverse(next.begin(), next.end());
      for (Eigen::Index r = 0; r < safe.num_rows() && !next.empty(); ++r)
        next = clip_halfplane(next, safe.H().row(r).transpose(), safe.a()(r));
    }
    out.push_back(next);
  }
  return out;
}

}  // namespace czreach
