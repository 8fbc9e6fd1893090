#pragma once

#include "czreach/sets.hpp"

#include <optional>
#include <string>
#include <vector>

namespace czreach::acceptance {

struct Options {
  // multiplies every numeric tolerance; a corrupted value must make criteria fail
  double tolerance_scale = 1.0;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

const std::vector<Criterion>& criteria();

// runs one criterion; never throws (errors become failures)
Outcome run_criterion(int id, const Options& opts = {});

// Shrink LP with the free center, offset, multiplier and parameter-shift
// variables kept (the form that the production solver reduces away).
// Optimal sum of the scale vector, nullopt when infeasible.
std::optional<double> min_out_full_objective(const CZ& minuend, const Zonotope& subtrahend);

}  // namespace czreach::acceptance
