#include "doctest.h"

#include "czreach/dynamics.hpp"

#include <numbers>
#include <random>

using namespace czreach;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double draw(std::mt19937_64& rng, const Interval& I) {
  return std::uniform_real_distribution<double>(I.lo(), I.hi())(rng);
}

Hyperbox box_around(const Vec& z, double r) {
  return Hyperbox(z.array() - r, z.array() + r);
}

}  // namespace

TEST_CASE("interval examples") {
  Interval s = Interval(1, 2) + Interval(3, 4);
  CHECK(s.lo() == doctest::Approx(4.0));
  CHECK(s.hi() == doctest::Approx(6.0));
  Interval t = sin(Interval(0.0, std::numbers::pi));
  CHECK(t.lo() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(t.hi() == doctest::Approx(1.0));
  Interval r = sqrt(Interval(4, 9));
  CHECK(r.lo() == doctest::Approx(2.0));
  CHECK(r.hi() == doctest::Approx(3.0));
  CHECK_THROWS_AS(sqrt(Interval(-1, 1)), std::domain_error);
  CHECK_THROWS_AS(Interval(2, 1), std::invalid_argument);
  Interval c = cos(Interval(-0.5, 4.0));
  CHECK(c.lo() == -1.0);
  CHECK(c.hi() == 1.0);
}

TEST_CASE("interval operations enclose point evaluations") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    double a0 = U(rng), a1 = a0 + std::abs(U(rng)), b0 = U(rng), b1 = b0 + std::abs(U(rng));
    Interval a(a0, a1), b(b0, b1);
    Interval pa(std::abs(a0), std::abs(a0) + std::abs(a1 - a0));
    Interval sum = a + b, dif = a - b, prod = a * b, sa = sin(a), ca = cos(a), sq = sqr(a), rt = sqrt(pa);
    for (int k = 0; k < 100; ++k) {
      double x = draw(rng, a), y = draw(rng, b), p = draw(rng, pa);
      CHECK(sum.contains(x + y));
      CHECK(dif.contains(x - y));
      CHECK(prod.contains(x * y));
      CHECK(sa.contains(std::sin(x)));
      CHECK(ca.contains(std::cos(x)));
      CHECK(sq.contains(x * x));
      CHECK(rt.contains(std::sqrt(p)));
    }
  }
}

TEST_CASE("builtin model constants") {
  SystemModel di = double_integrator_2d();
  Mat J = di.jacobian(Vec::Zero(3));
  CHECK(J(0, 0) == 0.9962);
  CHECK(J(1, 0) == -0.1496);
  CHECK(J(0, 2) == -0.004034);
  CHECK(J(1, 2) == 0.08025);
  SystemModel dc = dubins_car();
  CHECK(dc.default_inputs.lower()(0) == 0.04);
  CHECK(dc.default_inputs.upper()(1) == 0.04);
  SystemModel wt = water_tanks_10d();
  CHECK(wt.default_inputs.lower()(0) == 0.135);
  CHECK(wt.default_inputs.upper()(0) == 0.145);
  CHECK_THROWS_AS(model_by_name("nope"), std::invalid_argument);
  CHECK(model_by_name("linear_10d").n == 10);
}

TEST_CASE("linearization examples") {
  LinearizedModel d = linearize(dubins_car(), vec({0, 0, 0, 0.06, 0.02}));
  Mat A(3, 3), B(3, 2);
  A << 1, 0, 0, 0, 1, 0.06, 0, 0, 1;
  B << 1, 0, 0, 0, 0, 1;
  CHECK((d.A - A).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((d.B - B).cwiseAbs().maxCoeff() < 1e-15);

  Vec z = Vec::Constant(11, 4.0);
  z(10) = 0.14;
  LinearizedModel t = linearize(water_tanks_10d(), z);
  CHECK(t.A(0, 0) == doctest::Approx(1.0 - 0.01 * 0.015 * 9.81 / std::sqrt(2 * 9.81 * 4)));

  LinearizedModel l = linearize(double_integrator_2d(), vec({0.3, -0.2, 1.0}));
  CHECK(l.offset.norm() < 1e-15);
}

TEST_CASE("Jacobians agree with central differences") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (const SystemModel& m : {dubins_car(), water_tanks_10d()}) {
    const int nz = m.n + m.q;
    for (int t = 0; t < 20; ++t) {
      Vec z(nz);
      for (int i = 0; i < nz; ++i) z(i) = U(rng);
      if (m.name == "water_tanks_10d") z.array() = 3.0 + z.array();
      Mat J = m.jacobian(z);
      for (int j = 0; j < nz; ++j) {
        double h = 1e-6;
        Vec zp = z, zm = z;
        zp(j) += h;
        zm(j) -= h;
        Vec fd = (m.eval(zp.head(m.n), zp.tail(m.q)) - m.eval(zm.head(m.n), zm.tail(m.q))) / (2 * h);
        for (int i = 0; i < m.n; ++i)
          CHECK(std::abs(fd(i) - J(i, j)) <= 1e-4 * std::max(1.0, std::abs(J(i, j))));
      }
    }
  }
}

TEST_CASE("remainder enclosure is sound on sampled points") {
  std::mt19937_64 rng(5);
  struct Case {
    SystemModel model;
    Vec z_star;
    double radius;
  };
  Vec tank = Vec::Constant(11, 4.0);
  tank(10) = 0.14;
  std::vector<Case> cases = {{dubins_car(), vec({0.1, -0.2, 0.7, 0.06, 0.02}), 0.05},
                             {dubins_car(), vec({0.0, 0.0, 2.9, 0.05, 0.01}), 0.3},
                             {water_tanks_10d(), tank, 0.2}};
  for (const Case& c : cases) {
    const int n = c.model.n, nz = n + c.model.q;
    Hyperbox zbox = box_around(c.z_star, c.radius);
    LinearizedModel lin = linearize(c.model, c.z_star);
    Hyperbox L = lagrange_remainder(c.model, c.z_star, zbox);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
      Vec z = c.z_star;
      for (int i = 0; i < nz; ++i) z(i) += c.radius * U(rng);
      Vec err = c.model.eval(z.head(n), z.tail(c.model.q)) - lin.A * z.head(n) - lin.B * z.tail(c.model.q);
      CHECK(L.contains(err, 1e-13));
    }
  }
}

TEST_CASE("Dubins remainder widths") {
  Vec z = vec({0, 0, 0, 0.06, 0.02});
  Hyperbox r1 = remainder_bounds(dubins_car(), z, box_around(z, 0.01));
  // |d2f/dx3^2| <= u1 <= 0.07, |d2f/dx3du1| <= 1, |dz| <= 0.01
  double bound = 2.0 * (0.5 * 0.07 * 1e-4 + 1e-4);
  for (int i = 0; i < 3; ++i) CHECK(r1.upper()(i) - r1.lower()(i) <= bound);
  CHECK(r1.upper()(2) - r1.lower()(2) == 0.0);
  Hyperbox r2 = remainder_bounds(dubins_car(), z, box_around(z, 0.005));
  for (int i = 0; i < 2; ++i)
    CHECK((r1.upper()(i) - r1.lower()(i)) >= 3.9 * (r2.upper()(i) - r2.lower()(i)));
}

TEST_CASE("linear models have zero remainder and tanks guard their domain") {
  Vec z = vec({1.0, 2.0, 0.5});
  Hyperbox L = lagrange_remainder(double_integrator_2d(), z, box_around(z, 1.0));
  CHECK(L.volume() == 0.0);
  Vec tz = Vec::Constant(11, 0.05);
  CHECK_THROWS_AS(remainder_bounds(water_tanks_10d(), tz, box_around(tz, 0.1)), std::domain_error);
}
