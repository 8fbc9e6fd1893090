#pragma once

#include "czreach/sets.hpp"

#include <string>
#include <vector>

namespace czreach::cli {

// one group of a planar plot: sampled points and interval-closure rectangles
struct PlotLayer {
  std::string label;
  std::vector<Vec> points;  // already projected to 2-D
  std::vector<Hyperbox> boxes;
};

// layers are drawn in order, colored along a fixed ramp
std::string render_svg(const std::vector<PlotLayer>& layers, const std::string& x_label, const std::string& y_label);

}  // namespace czreach::cli
