#pragma once

#include "czreach/dynamics.hpp"
#include "czreach/mink_diff.hpp"
#include "czreach/sets.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace czreach {

class SingularDynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { Scaling, Splitting };
enum class Termination { HorizonReached, EmptySet, BranchBudgetExhausted, ScaleIterExceeded };

const char* to_string(Method m);
const char* to_string(Termination t);

struct ReachProblem {
  SystemModel model;
  CZ target;
  CZ inputs;
  Zonotope disturbance;
  SafeSet safe;
  int horizon = 1;
  Method method = Method::Scaling;
  double alpha = 1.1;
  Vec L_bar;  // splitting only; empty means zero
  int max_branches = 64;
  int max_scale_iters = 30;
  int max_split_depth = 12;

  // throws std::invalid_argument describing the first inconsistency
  void validate() const;
};

// how an output set was produced; enough to re-check it independently
struct PieceOrigin {
  int parent = -1;     // index into the previous step's list
  CZ target;           // set that was differenced (the parent or one of its split pieces)
  Vec z_star;          // linearization point, empty for the exact linear recursion
  Zonotope L;          // linearization error set used in the difference
  Hyperbox remainder;  // enclosure of the true linearization error at exit
};

struct StepDiagnostics {
  int scale_iterations = 0;
  int splits = 0;
  int pruned_empty = 0;
  int depth_cap_hits = 0;
  int candidates = 0;  // output sets before sampling
};

struct ReachResult {
  std::vector<std::vector<CZ>> steps;              // steps[0] = {target}
  std::vector<std::vector<PieceOrigin>> origins;   // aligned with steps; origins[0] is empty
  std::vector<StepDiagnostics> diagnostics;        // aligned with steps
  Termination termination = Termination::HorizonReached;
};

// linear recursion with the exact affine preimage; nullopt when empty
std::optional<CZ> pre_linear(const CZ& Xprev, const Mat& A, const Mat& B, const ReachProblem& problem);

// {[x; u] : A x + B u in X - (L + W), u in U, x in safe (if given)}; nullopt when empty
std::optional<CZ> pre_xu(const CZ& X, const Mat& A, const Mat& B, const CZ& U, const Zonotope& W,
                         const Zonotope& L, const HPolytope* safe = nullptr);
// same set, always through the lifted intersection encoding (never inverts A)
std::optional<CZ> pre_xu_lifted(const CZ& X, const Mat& A, const Mat& B, const CZ& U, const Zonotope& W,
                                const Zonotope& L, const HPolytope* safe = nullptr);

CZ project_x(const CZ& Z, Eigen::Index n);

struct ScalingStep {
  std::optional<CZ> set;
  PieceOrigin origin;
  int iterations = 0;
  bool exceeded = false;
};
ScalingStep scaling_brs_step(const CZ& Xprev, const ReachProblem& problem);

Eigen::Index select_split_generator(const CZ& S, const ReachProblem& problem);

// indices of the kept sets, ascending
std::vector<std::size_t> farthest_point_sample(const std::vector<CZ>& sets, int budget);

struct SplittingStep {
  std::vector<CZ> sets;
  std::vector<PieceOrigin> origins;
  StepDiagnostics diagnostics;
  bool depth_exhausted = false;
};
SplittingStep splitting_brs_step(const std::vector<CZ>& prev, const ReachProblem& problem);

ReachResult run(const ReachProblem& problem);

}  // namespace czreach
