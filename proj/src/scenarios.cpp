#include "czreach/scenarios.hpp"

namespace czreach {

namespace {

Hyperbox box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  Vec l(static_cast<Eigen::Index>(lo.size())), h(static_cast<Eigen::Index>(hi.size()));
  Eigen::Index i = 0;
  for (double v : lo) l(i++) = v;
  i = 0;
  for (double v : hi) h(i++) = v;
  return Hyperbox(l, h);
}

HPolytope halfspace(std::initializer_list<double> h, double a) {
  Mat H(1, static_cast<Eigen::Index>(h.size()));
  Eigen::Index j = 0;
  for (double v : h) H(0, j++) = v;
  return HPolytope(H, Vec::Constant(1, a));
}

ReachProblem dubins_base(int horizon) {
  ReachProblem p;
  p.model = dubins_car();
  p.target = CZ(box({-0.1, -0.1, -0.2}, {0.1, 0.1, 0.2}));
  p.inputs = CZ(p.model.default_inputs);
  p.disturbance = Zonotope(box({-5e-4, -5e-4, -5e-4}, {5e-4, 5e-4, 5e-4}));
  p.horizon = horizon;
  p.L_bar = Vec(3);
  p.L_bar << 0.002, 0.002, 0.001;
  return p;
}

}  // namespace

ReachProblem double_integrator_problem(int horizon) {
  ReachProblem p;
  p.model = double_integrator_2d();
  Mat G(2, 2);
  G << 0.5, 0.0, 0.0, 0.5;
  Vec c(2);
  c << 1.5, 0.0;
  p.target = CZ(G, c);
  p.inputs = CZ(p.model.default_inputs);
  Mat W(2, 2);
  W << 0.1997, 0.002396, -0.01498, 0.1997;
  p.disturbance = Zonotope(W, Vec::Zero(2));
  Mat H(2, 2);
  H << -1.0, 0.0, 2.0, 1.0;
  Vec a(2);
  a << 2.0, 5.0;
  p.safe = SafeSet({HPolytope(H, a)});
  p.horizon = horizon;
  p.method = Method::Scaling;
  return p;
}

Hyperbox dubins_obstacle() { return box({-0.3, -0.04}, {-0.2, 0.04}); }

ReachProblem dubins_obstacle_problem(int horizon) {
  ReachProblem p = dubins_base(horizon);
  Hyperbox ob = dubins_obstacle();
  p.safe = SafeSet({halfspace({1, 0, 0}, ob.lower()(0)), halfspace({-1, 0, 0}, -ob.upper()(0)),
                    halfspace({0, -1, 0}, -ob.upper()(1)), halfspace({0, 1, 0}, ob.lower()(1))});
  p.method = Method::Splitting;
  p.max_branches = 64;
  return p;
}

ReachProblem dubins_halfspace_problem(int horizon) {
  ReachProblem p = dubins_base(horizon);
  p.safe = SafeSet({halfspace({0, 1, 0}, 0.15)});
  p.method = Method::Scaling;
  return p;
}

ReachProblem tank_problem(int horizon) {
  ReachProblem p;
  p.model = water_tanks_10d();
  p.target = CZ(Hyperbox(Vec::Constant(10, 3.9), Vec::Constant(10, 4.1)));
  p.inputs = CZ(p.model.default_inputs);
  p.disturbance = Zonotope(Hyperbox(Vec::Constant(10, -1e-5), Vec::Constant(10, 1e-5)));
  // levels stay well above the bottom of the tanks
  p.safe = SafeSet({HPolytope(-Mat::Identity(10, 10), Vec::Constant(10, -1.0))});
  p.horizon = horizon;
  p.method = Method::Splitting;
  p.L_bar = Vec::Constant(10, 1e-6);
  p.max_branches = 16;
  return p;
}

ReachProblem linear_10d_problem(int horizon) {
  ReachProblem p;
  p.model = linear_10d();
  Vec lo(10), hi(10), wl(10);
  for (int i = 0; i < 10; ++i) {
    bool pair = i < 6;
    lo(i) = pair ? 9.5 : 8.0;
    hi(i) = pair ? 10.5 : 12.0;
    wl(i) = pair ? (i % 2 == 0 ? 0.12 : 0.2) : 0.1;
  }
  p.target = CZ(Hyperbox(lo, hi));
  p.inputs = CZ(p.model.default_inputs);
  p.disturbance = Zonotope(Hyperbox(-wl, wl));
  p.safe = SafeSet({HPolytope(Mat(0, 10), Vec(0))});
  p.horizon = horizon;
  p.method = Method::Scaling;
  return p;
}

GapExample gap_example() {
  Mat G(2, 4), A(1, 4);
  G << 1, 0, 0, 0.1, 0, 1, 0, 0.8;
  A << -1, 1, 0.3, 1;
  GapExample ex;
  ex.minuend = CZ(G, Vec::Zero(2), A, Vec::Constant(1, 1.0));
  ex.shrink.sigma_bar = Vec::Constant(4, 0.2);
  ex.shrink.gamma = Mat::Zero(4, 0);
  ex.shrink.c_s = Vec::Zero(2);
  ex.shrink.b_s = Vec::Zero(1);
  return ex;
}

}  // namespace czreach
