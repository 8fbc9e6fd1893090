#pragma once

#include "czreach/brs.hpp"
#include "czreach/dynamics.hpp"
#include "czreach/sets.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace czreach {

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
  Hyperbox bounding_box;
};

// vertices of a planar set in counter-clockwise order, found by support queries
std::vector<Vec> polygon_vertices_2d(const CZ& S);
double polygon_area(const std::vector<Vec>& vertices);

// Membership test equivalent to contains_point, with cheap accept/reject
// shortcuts (exact polygon in 2-D, outer support bounds otherwise).
class HitTester {
 public:
  explicit HitTester(const CZ& S, double tol = lp::kFeasibilityTol);
  bool contains(const Vec& x);
  const Hyperbox& box() const { return box_; }
  long lp_calls() const { return lp_calls_; }

 private:
  CZ set_;
  double tol_;
  Hyperbox box_;
  std::vector<Vec> polygon_;
  Mat outer_H_;
  Vec outer_a_;
  MembershipOracle oracle_;
  long lp_calls_ = 0;
};

VolumeEstimate mc_volume(const CZ& S, long samples = 100000, std::uint64_t seed = 42);
VolumeEstimate mc_volume_union(const std::vector<CZ>& sets, long samples = 100000, std::uint64_t seed = 42);

struct DiffGrid {
  std::vector<Vec> points;
  std::vector<char> in_difference;  // x + v in minuend for every subtrahend point v
};

// grid over the minuend's interval closure (resolution x resolution, endpoints included)
DiffGrid brute_force_diff_2d(const CZ& minuend, const std::vector<Vec>& subtrahend_points, int resolution,
                             double tol = 1e-6);
// subtrahend given by its sign-pattern vertices plus 100 random members
DiffGrid brute_force_diff_2d(const CZ& minuend, const Zonotope& subtrahend, int resolution, std::uint64_t seed = 1,
                             double tol = 1e-6);

// unit directions from a fixed pseudo-random stream
std::vector<Vec> unit_directions(Eigen::Index n, int count, std::uint64_t seed);
double max_support_gap(const CZ& a, const CZ& b, const std::vector<Vec>& dirs);
double max_support_gap(const CZ& a, const HPolytope& b, const std::vector<Vec>& dirs);

// Exact planar recursion on convex polygons (ccw vertex lists), independent of
// the constrained-zonotope machinery. Entry k is X_k; an empty list means empty.
using Polygon2 = std::vector<Vec>;
Polygon2 convex_hull_2d(std::vector<Vec> points);
Polygon2 clip_halfplane(const Polygon2& poly, const Vec& h, double a);
std::vector<Polygon2> exact_linear_brs_2d(const Mat& A, const Mat& B, const Polygon2& target, const Hyperbox& U,
                                          const Zonotope& W, const HPolytope& safe, int horizon);
bool polygon_contains(const Polygon2& poly, const Vec& x, double tol);

struct Certificate {
  bool certified = false;
  Vec u;
  double residual = 0.0;
};

// exists u in U with A x + B u in Xtarget - (W + L), A, B linearized at z_star
class CertificateChecker {
 public:
  CertificateChecker(const SystemModel& model, const Vec& z_star, const CZ& Xtarget, const CZ& U, const Zonotope& W,
                     const Zonotope& L);
  Certificate check(const Vec& x) const;
  // the shrunken target is empty or could not be formed
  bool vacuous() const { return vacuous_; }

 private:
  LinearizedModel lin_;
  CZ U_;
  CZ D_;
  bool vacuous_ = false;
};

// Closed-loop check on sampled members of every step of a run: a certificate
// input is sought for each sample, then the true successor f(x, u) + w is
// tested against the piece's target for disturbance vertices.
struct ClosedLoopStats {
  long samples = 0;
  long certified = 0;   // certificate LP succeeded
  long successor = 0;   // certified and every tested f(x, u) + w lies in the target
  long error_in_L = 0;  // certified, pointwise linearization error and stored enclosure inside L
  int steps = 0;
};
ClosedLoopStats closed_loop_check(const ReachProblem& problem, const ReachResult& result, int samples_per_step,
                                  double tol, std::uint64_t seed);

// vertices of Z; random sign patterns when there are more than max_patterns
std::vector<Vec> zonotope_vertices(const Zonotope& Z, int max_patterns, std::uint64_t seed);

Certificate control_certificate(const Vec& x, const SystemModel& model, const Vec& z_star, const CZ& Xtarget,
                                const CZ& U, const Zonotope& W, const Zonotope& L);

}  // namespace czreach
