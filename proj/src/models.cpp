#include "czreach/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace czreach {

namespace {

std::vector<IntervalMatrix> zero_hessians(int n, int nz) {
  return std::vector<IntervalMatrix>(n, IntervalMatrix(nz, nz));
}

// water tank constants
constexpr double kDt = 0.01;
constexpr double kK1 = 0.015;
constexpr double kK2 = 0.01;
constexpr double kG = 9.81;
constexpr double kLevelEps = 1e-9;

double torricelli(double level) {
  if (level < 0.0) throw std::domain_error("water_tanks_10d: negative water level.");
  return std::sqrt(2.0 * kG * level);
}

// g^2 (2 g x)^(-3/2), the magnitude of the second derivative of sqrt(2 g x)
Interval torricelli_curvature(const Interval& level) {
  if (level.lo() < 0.0) throw std::domain_error("water_tanks_10d: level range reaches below zero.");
  Interval x(std::max(level.lo(), kLevelEps), std::max(level.hi(), kLevelEps));
  return Interval(kG * kG) * pow_pos(Interval(2.0 * kG) * x, -1.5);
}

}  // namespace

SystemModel linear_model(std::string name, const Mat& A, const Mat& B) {
  if (A.rows() != A.cols() || B.rows() != A.rows())
    throw DimensionError("linear_model: A must be square and B must have matching rows.");
  SystemModel m;
  m.name = std::move(name);
  m.n = static_cast<int>(A.rows());
  m.q = static_cast<int>(B.cols());
  m.is_linear = true;
  m.eval = [A, B](const Vec& x, const Vec& u) -> Vec { return A * x + B * u; };
  Mat J(A.rows(), A.cols() + B.cols());
  J << A, B;
  m.jacobian = [J](const Vec&) { return J; };
  const int n = m.n, nz = m.n + m.q;
  m.hessian_bounds = [n, nz](const std::vector<Interval>&) { return zero_hessians(n, nz); };
  return m;
}

SystemModel double_integrator_2d() {
  Mat A(2, 2), B(2, 1);
  A << 0.9962, 0.02394, -0.1496, 0.9962;
  B << -0.004034, 0.08025;
  SystemModel m = linear_model("double_integrator_2d", A, B);
  m.default_inputs = Hyperbox(Vec::Constant(1, -1.5), Vec::Constant(1, 1.5));
  return m;
}

// Placeholder dynamics: three position/velocity pairs driven by one input each,
// four slowly contracting passive states.
SystemModel linear_10d() {
  Mat A = Mat::Identity(10, 10);
  Mat B = Mat::Zero(10, 3);
  for (int j = 0; j < 3; ++j) {
    A(2 * j, 2 * j + 1) = 0.05;
    B(2 * j, j) = 0.25;
    B(2 * j + 1, j) = 0.5;
  }
  for (int i = 6; i < 10; ++i) A(i, i) = 0.98;
  SystemModel m = linear_model("linear_10d", A, B);
  m.default_inputs = Hyperbox(Vec::Constant(3, -0.5), Vec::Constant(3, 0.5));
  return m;
}

SystemModel dubins_car() {
  SystemModel m;
  m.name = "dubins_car";
  m.n = 3;
  m.q = 2;
  m.eval = [](const Vec& x, const Vec& u) -> Vec {
    Vec y(3);
    y << x(0) + u(0) * std::cos(x(2)), x(1) + u(0) * std::sin(x(2)), x(2) + u(1);
    return y;
  };
  m.jacobian = [](const Vec& z) -> Mat {
    double s = std::sin(z(2)), c = std::cos(z(2));
    Mat J = Mat::Zero(3, 5);
    J(0, 0) = 1.0;
    J(0, 2) = -z(3) * s;
    J(0, 3) = c;
    J(1, 1) = 1.0;
    J(1, 2) = z(3) * c;
    J(1, 3) = s;
    J(2, 2) = 1.0;
    J(2, 4) = 1.0;
    return J;
  };
  m.hessian_bounds = [](const std::vector<Interval>& z) {
    std::vector<IntervalMatrix> H = zero_hessians(3, 5);
    Interval s = sin(z[2]), c = cos(z[2]);
    H[0](2, 2) = -(z[3] * c);
    H[0](2, 3) = H[0](3, 2) = -s;
    H[1](2, 2) = -(z[3] * s);
    H[1](2, 3) = H[1](3, 2) = c;
    return H;
  };
  Vec lo(2), hi(2);
  lo << 0.04, 0.0;
  hi << 0.08, 0.04;
  m.default_inputs = Hyperbox(lo, hi);
  return m;
}

SystemModel water_tanks_10d() {
  SystemModel m;
  m.name = "water_tanks_10d";
  m.n = 10;
  m.q = 1;
  m.eval = [](const Vec& x, const Vec& u) -> Vec {
    Vec y(10);
    y(0) = x(0) + kDt * (u(0) - kK2 * x(9) - kK1 * torricelli(x(0)));
    for (int i = 1; i < 10; ++i) y(i) = x(i) + kDt * kK1 * (torricelli(x(i - 1)) - torricelli(x(i)));
    return y;
  };
  m.jacobian = [](const Vec& z) -> Mat {
    Mat J = Mat::Zero(10, 11);
    auto slope = [](double level) {
      double s = torricelli(level);
      if (s == 0.0) throw std::domain_error("water_tanks_10d: empty tank has no derivative.");
      return kG / s;
    };
    J(0, 0) = 1.0 - kDt * kK1 * slope(z(0));
    J(0, 9) = -kDt * kK2;
    J(0, 10) = kDt;
    for (int i = 1; i < 10; ++i) {
      J(i, i - 1) = kDt * kK1 * slope(z(i - 1));
      J(i, i) = 1.0 - kDt * kK1 * slope(z(i));
    }
    return J;
  };
  m.hessian_bounds = [](const std::vector<Interval>& z) {
    std::vector<IntervalMatrix> H = zero_hessians(10, 11);
    std::vector<Interval> curv(10);
    for (int i = 0; i < 10; ++i) curv[i] = torricelli_curvature(z[i]);
    Interval scale(kDt * kK1);
    H[0](0, 0) = scale * curv[0];
    for (int i = 1; i < 10; ++i) {
      H[i](i - 1, i - 1) = -(scale * curv[i - 1]);
      H[i](i, i) = scale * curv[i];
    }
    return H;
  };
  m.default_inputs = Hyperbox(Vec::Constant(1, 0.135), Vec::Constant(1, 0.145));
  return m;
}

SystemModel model_by_name(const std::string& name) {
  if (name == "double_integrator_2d") return double_integrator_2d();
  if (name == "linear_10d") return linear_10d();
  if (name == "dubins_car") return dubins_car();
  if (name == "water_tanks_10d") return water_tanks_10d();
  throw std::invalid_argument("unknown model '" + name + "'");
}

Vec successor(const SystemModel& model, const Vec& x, const Vec& u) {
  if (x.size() != model.n || u.size() != model.q) throw DimensionError("successor: invalid input dimensions.");
  return model.eval(x, u);
}

LinearizedModel linearize(const SystemModel& model, const Vec& z_star) {
  if (z_star.size() != model.n + model.q) throw DimensionError("linearize: invalid input dimensions.");
  Mat J = model.jacobian(z_star);
  LinearizedModel lin;
  lin.A = J.leftCols(model.n);
  lin.B = J.rightCols(model.q);
  lin.offset = model.eval(z_star.head(model.n), z_star.tail(model.q)) - J * z_star;
  return lin;
}

Hyperbox remainder_bounds(const SystemModel& model, const Vec& z_star, const Hyperbox& zbox) {
  const int nz = model.n + model.q;
  if (z_star.size() != nz || zbox.dim() != nz) throw DimensionError("remainder_bounds: invalid input dimensions.");
  if (model.is_linear) return Hyperbox(Vec::Zero(model.n), Vec::Zero(model.n));

  std::vector<Interval> hull(nz), d(nz);
  for (int j = 0; j < nz; ++j) {
    hull[j] = Interval(std::min(zbox.lower()(j), z_star(j)), std::max(zbox.upper()(j), z_star(j)));
    d[j] = Interval(zbox.lower()(j), zbox.upper()(j)) - Interval(z_star(j));
  }
  std::vector<IntervalMatrix> H = model.hessian_bounds(hull);
  Vec lo(model.n), hi(model.n);
  for (int i = 0; i < model.n; ++i) {
    Interval r(0.0);
    const IntervalMatrix& Hi = H[i];
    for (int j = 0; j < nz; ++j) {
      const Interval& hjj = Hi(j, j);
      if (hjj.lo() != 0.0 || hjj.hi() != 0.0) r += Interval(0.5) * hjj * sqr(d[j]);
      for (int k = j + 1; k < nz; ++k) {
        const Interval& hjk = Hi(j, k);
        if (hjk.lo() == 0.0 && hjk.hi() == 0.0) continue;
        r += hjk * d[j] * d[k];
      }
    }
    lo(i) = r.lo();
    hi(i) = r.hi();
  }
  return Hyperbox(lo, hi);
}

Hyperbox lagrange_remainder(const SystemModel& model, const Vec& z_star, const Hyperbox& zbox) {
  LinearizedModel lin = linearize(model, z_star);
  Hyperbox r = remainder_bounds(model, z_star, zbox);
  return Hyperbox(lin.offset + r.lower(), lin.offset + r.upper());
}

Hyperbox lagrange_remainder(const SystemModel& model, const Vec& z_star, const CZ& Z) {
  return lagrange_remainder(model, z_star, interval_closure(Z));
}

}  // namespace czreach
