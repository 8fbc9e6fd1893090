#pragma once

#include "czreach/brs.hpp"
#include "czreach/io.hpp"
#include "czreach/mink_diff.hpp"

#include <optional>
#include <string>

namespace czreach::cli {

struct OutputOptions {
  int samples_per_set = 20;      // rows written to points.csv for every set
  int volume_samples = 0;        // 0 skips the volume estimate of the last step
  int certificate_samples = 0;   // per step; 0 skips the closed-loop check
  int plot_axes[2] = {0, 1};
};

struct ReachConfig {
  ReachProblem problem;
  OutputOptions output;
};

struct RandomBatch {
  int instances = 20;
  int max_generators = 12;
  int max_subtrahend_generators = 6;
  int max_constraints = 3;
  std::vector<int> dims{2, 3, 4};
};

struct MinkdiffConfig {
  // exactly one of the three minuend forms is set
  std::optional<CZ> minuend;
  std::optional<HPolytope> minuend_h;
  std::optional<RandomBatch> batch;
  Zonotope subtrahend;
  std::optional<Vec> sigma_bar;  // skip the shrink LP and use these factors (subtrahend then optional)
  MinOutOptions shrink_options;  // objective weights (empty = all ones), nonemptiness constraint
  int directions = 16;
  int grid_resolution = 100;     // planar brute-force oracle
  int state_samples = 1000;
  int disturbance_samples = 100;
};

json read_json_file(const std::string& path);
ReachConfig parse_reach(const json& j);
MinkdiffConfig parse_minkdiff(const json& j);

}  // namespace czreach::cli
