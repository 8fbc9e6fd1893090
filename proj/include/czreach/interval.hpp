#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace czreach {

// Closed interval with outward rounding by one ulp on every operation.
class Interval {
 public:
  constexpr Interval() = default;
  constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lower bound exceeds upper bound.");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  double radius() const { return 0.5 * (hi_ - lo_); }
  double width() const { return hi_ - lo_; }
  double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }
  bool contains(double v) const { return lo_ <= v && v <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

  static Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }

  friend Interval operator+(const Interval& a, const Interval& b) { return widen(a.lo_ + b.lo_, a.hi_ + b.hi_); }
  friend Interval operator-(const Interval& a, const Interval& b) { return widen(a.lo_ - b.hi_, a.hi_ - b.lo_); }
  friend Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }
  friend Interval operator*(const Interval& a, const Interval& b) {
    double p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw std::domain_error("Interval: division by an interval containing zero.");
    return a * widen(1.0 / b.hi_, 1.0 / b.lo_);
  }
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  friend Interval sqr(const Interval& a) {
    double l = a.lo_ * a.lo_, h = a.hi_ * a.hi_;
    if (a.lo_ <= 0.0 && a.hi_ >= 0.0) return widen(0.0, std::max(l, h));
    return widen(std::min(l, h), std::max(l, h));
  }

  friend Interval sqrt(const Interval& a) {
    if (a.lo_ < 0.0) throw std::domain_error("Interval: square root of a negative range.");
    return widen(std::sqrt(a.lo_), std::sqrt(a.hi_));
  }

  // x^p for x > 0, any real p
  friend Interval pow_pos(const Interval& a, double p) {
    if (a.lo_ <= 0.0) throw std::domain_error("Interval: power of a nonpositive range.");
    double l = std::pow(a.lo_, p), h = std::pow(a.hi_, p);
    return widen(std::min(l, h), std::max(l, h));
  }

  friend Interval sin(const Interval& a) { return cos(a - Interval(std::numbers::pi / 2)); }

  friend Interval cos(const Interval& a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (a.width() >= two_pi) return Interval(-1.0, 1.0);
    double cl = std::cos(a.lo_), ch = std::cos(a.hi_);
    double lo = std::min(cl, ch), hi = std::max(cl, ch);
    // maxima at 2k pi, minima at (2k + 1) pi
    double k_max = std::ceil(a.lo_ / two_pi);
    if (k_max * two_pi <= a.hi_) hi = 1.0;
    double k_min = std::ceil((a.lo_ - std::numbers::pi) / two_pi);
    if (k_min * two_pi + std::numbers::pi <= a.hi_) lo = -1.0;
    Interval r = widen(lo, hi);
    return Interval(std::max(r.lo_, -1.0), std::min(r.hi_, 1.0));
  }

 private:
  static Interval widen(double lo, double hi) {
    Interval r;
    r.lo_ = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    r.hi_ = std::nextafter(hi, std::numeric_limits<double>::infinity());
    return r;
  }

  double lo_ = 0.0;
  double hi_ = 0.0;
};

// dense matrix of intervals, row-major
class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Interval& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Interval& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Interval> data_;
};

}  // namespace czreach
