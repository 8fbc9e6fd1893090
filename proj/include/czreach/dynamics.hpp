#pragma once

#include "czreach/interval.hpp"
#include "czreach/sets.hpp"

#include <functional>
#include <string>
#include <vector>

namespace czreach {

// x+ = f(x, u) + w
struct SystemModel {
  using Eval = std::function<Vec(const Vec& x, const Vec& u)>;
  // Jacobian [df/dx, df/du] at z = [x; u]
  using Jacobian = std::function<Mat(const Vec& z)>;
  // one (n+q) x (n+q) interval matrix per output, enclosing the Hessian over zbox
  using HessianBounds = std::function<std::vector<IntervalMatrix>(const std::vector<Interval>& zbox)>;

  std::string name;
  int n = 0;
  int q = 0;
  Eval eval;
  Jacobian jacobian;
  HessianBounds hessian_bounds;
  bool is_linear = false;
  // nominal input set and target suggested by the model's source example (may be empty)
  Hyperbox default_inputs;
};

struct LinearizedModel {
  Mat A;
  Mat B;
  Vec offset;  // f(z*) - [A, B] z*
};

SystemModel linear_model(std::string name, const Mat& A, const Mat& B);
SystemModel double_integrator_2d();
SystemModel linear_10d();
SystemModel dubins_car();
SystemModel water_tanks_10d();
// throws std::invalid_argument for unknown names
SystemModel model_by_name(const std::string& name);

Vec successor(const SystemModel& model, const Vec& x, const Vec& u);
LinearizedModel linearize(const SystemModel& model, const Vec& z_star);

// box enclosing f(z) - (A x + B u + offset) for z in zbox, linearized at z_star (offset excluded)
Hyperbox remainder_bounds(const SystemModel& model, const Vec& z_star, const Hyperbox& zbox);
// the set L: offset plus the remainder enclosure over the interval closure of Z
Hyperbox lagrange_remainder(const SystemModel& model, const Vec& z_star, const CZ& Z);
Hyperbox lagrange_remainder(const SystemModel& model, const Vec& z_star, const Hyperbox& zbox);

}  // namespace czreach
