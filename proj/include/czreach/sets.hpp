#pragma once

#include "czreach/lp.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace czreach {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using lp::DimensionError;

class EmptySetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyIntersectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundedSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Hyperbox {
 public:
  Hyperbox() = default;
  Hyperbox(Vec lower, Vec upper);

  Eigen::Index dim() const { return lower_.size(); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  Vec center() const { return 0.5 * (lower_ + upper_); }
  Vec half_widths() const { return 0.5 * (upper_ - lower_); }
  double volume() const;

  bool contains(const Vec& x, double tol = 0.0) const;
  bool contains(const Hyperbox& other, double tol = 0.0) const;

  static Hyperbox hull(const Hyperbox& a, const Hyperbox& b);
  static Hyperbox product(const Hyperbox& a, const Hyperbox& b);

 private:
  Vec lower_;
  Vec upper_;
};

class Zonotope {
 public:
  Zonotope() = default;
  Zonotope(Mat G, Vec c);
  explicit Zonotope(const Hyperbox& box);

  static Zonotope point(const Vec& c);

  Eigen::Index dim() const { return c_.size(); }
  Eigen::Index num_generators() const { return G_.cols(); }
  const Mat& generators() const { return G_; }
  const Vec& center() const { return c_; }

 private:
  Mat G_;
  Vec c_;
};

// {x : H x <= a}
class HPolytope {
 public:
  HPolytope() = default;
  HPolytope(Mat H, Vec a);
  explicit HPolytope(const Hyperbox& box);

  Eigen::Index dim() const { return H_.cols(); }
  Eigen::Index num_rows() const { return H_.rows(); }
  const Mat& H() const { return H_; }
  const Vec& a() const { return a_; }

  bool contains(const Vec& x, double tol = lp::kFeasibilityTol) const;

 private:
  Mat H_;
  Vec a_;
};

// {G theta + c : ||theta||_inf <= 1, A theta = b}
class ConstrainedZonotope {
 public:
  ConstrainedZonotope() = default;
  ConstrainedZonotope(Mat G, Vec c, Mat A, Vec b);
  ConstrainedZonotope(Mat G, Vec c);
  explicit ConstrainedZonotope(const Zonotope& z);
  explicit ConstrainedZonotope(const Hyperbox& box);

  Eigen::Index dim() const { return c_.size(); }
  Eigen::Index num_generators() const { return G_.cols(); }
  Eigen::Index num_constraints() const { return A_.rows(); }
  const Mat& generators() const { return G_; }
  const Vec& center() const { return c_; }
  const Mat& constraint_matrix() const { return A_; }
  const Vec& constraint_vector() const { return b_; }

 private:
  Mat G_;
  Vec c_;
  Mat A_;
  Vec b_;
};

using CZ = ConstrainedZonotope;

// union of H-polytope pieces; a piece with no rows is the whole space
class SafeSet {
 public:
  SafeSet() = default;
  explicit SafeSet(std::vector<HPolytope> pieces);

  Eigen::Index dim() const { return pieces_.front().dim(); }
  const std::vector<HPolytope>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool contains(const Vec& x, double tol = lp::kFeasibilityTol) const;

 private:
  std::vector<HPolytope> pieces_;
};

// CG-Rep operations
CZ linear_map(const Mat& M, const CZ& S);
CZ translate(const CZ& S, const Vec& t);
CZ minkowski_sum(const CZ& S1, const CZ& S2);
CZ intersect(const CZ& S1, const CZ& S2);
// {z in Z : R z in Y}
CZ intersect_mapped(const CZ& Z, const CZ& Y, const Mat& R);
// requires S intersected with {h'x <= a} to be nonempty
CZ intersect_halfspace(const CZ& S, const Vec& h, double a);
CZ product(const CZ& S1, const CZ& S2);
// the two halves obtained by splitting generator j
std::pair<CZ, CZ> split(const CZ& S, Eigen::Index j);
// nullopt when the intersection is empty; halfspaces that already contain S are skipped
std::optional<CZ> intersect_polytope(const CZ& S, const HPolytope& P);

struct SupportPoint {
  double value = 0.0;
  Vec point;
  Vec theta;
};

double support(const CZ& S, const Vec& h);
SupportPoint support_point(const CZ& S, const Vec& h);
bool is_empty(const CZ& S);
Hyperbox interval_closure(const CZ& S);
// relatively interior parameter (maximizes the distance to the box bounds)
Vec interior_parameter(const CZ& S);

double membership_residual(const CZ& S, const Vec& x);
bool contains_point(const CZ& S, const Vec& x, double tol = lp::kFeasibilityTol);

// reuses the LP layout for many membership queries against one set
class MembershipOracle {
 public:
  explicit MembershipOracle(const CZ& S);
  ~MembershipOracle();
  MembershipOracle(MembershipOracle&&) noexcept;
  MembershipOracle& operator=(MembershipOracle&&) noexcept;

  double residual(const Vec& x);
  bool contains(const Vec& x, double tol = lp::kFeasibilityTol) { return residual(x) <= tol; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// zonotope operations (closed form)
Zonotope linear_map(const Mat& M, const Zonotope& Z);
Zonotope minkowski_sum(const Zonotope& Z1, const Zonotope& Z2);
double support(const Zonotope& Z, const Vec& h);
Hyperbox interval_closure(const Zonotope& Z);

// H-polytope queries
double support(const HPolytope& P, const Vec& h);
bool is_empty(const HPolytope& P);
Hyperbox interval_closure(const HPolytope& P);

}  // namespace czreach
