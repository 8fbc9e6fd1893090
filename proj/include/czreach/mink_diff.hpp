#pragma once

#include "czreach/sets.hpp"

#include <stdexcept>

namespace czreach {

// no template-scaled enclosure of the subtrahend exists
class MinOutInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a rich representation was requested for a non-redundant halfspace
class NotRedundantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MinOutOptions {
  // also require a parameter of the shrunk minuend to stay feasible
  bool ensure_nonempty = false;
  // objective weights on the scale vector; empty means all ones
  Vec weights;
};

// result of the shrink-factor LP
struct MinOutSolution {
  Vec sigma_bar;  // N, entries in [0, 1]
  Mat gamma;      // N x N'
  Vec c_s;        // center of the enclosing set
  Vec b_s;        // constraint offset of the enclosing set (zero)
  long lp_iterations = 0;
};

struct DiffResult {
  CZ difference;
  CZ enclosing;  // template-scaled enclosure of the subtrahend
  MinOutSolution shrink;
  // true when the construction guarantees equality with the true difference
  bool exactness_certificate = false;
  // the true difference is known to be empty; difference is then a placeholder
  bool empty = false;
};

MinOutSolution min_out_simple(const CZ& minuend, const Zonotope& subtrahend, const MinOutOptions& opts = {});
DiffResult step_two(const CZ& minuend, const MinOutSolution& shrink);
DiffResult minkdiff_two_step(const CZ& minuend, const Zonotope& subtrahend, bool ensure_nonempty = false);

// {x : H x <= a - max_i h_i' Z}
HPolytope exact_hrep_diff(const HPolytope& P, const Zonotope& Z);
// Chebyshev center of a nonempty H-polytope; throws EmptySetError
Vec chebyshev_center(const HPolytope& P);
// CG-Rep of P whose two-step difference against Z is exact; throws EmptySetError if P - Z is empty
CZ rich_cgrep(const HPolytope& P, const Zonotope& Z);
DiffResult minkdiff_exact_via_rich(const HPolytope& P, const Zonotope& Z);

// re-encodes S with the redundant halfspace h'x <= a; same set, extra generator
CZ enrich_halfspace(const CZ& S, const Vec& h, double a);

// canonical empty set of dimension n
CZ empty_cz(Eigen::Index n);

}  // namespace czreach
