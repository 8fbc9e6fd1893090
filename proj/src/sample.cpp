#include "czreach/sample.hpp"

#include <algorithm>
#include <cmath>

namespace czreach {

namespace {
constexpr int kWalkSteps = 4;
}

MemberSampler::MemberSampler(const CZ& S, std::uint64_t seed) : set_(S), rng_(seed) {
  const Eigen::Index N = S.num_generators();
  if (S.num_constraints() == 0) {
    null_basis_ = Mat::Identity(N, N);
  } else {
    Eigen::FullPivLU<Mat> lu(S.constraint_matrix());
    lu.setThreshold(1e-10);
    null_basis_ = lu.kernel();
    if (lu.rank() == N) null_basis_.resize(N, 0);
  }
  theta_ = interior_parameter(S);
}

Vec MemberSampler::walk_step(bool endpoint) {
  const Eigen::Index k = null_basis_.cols();
  if (k == 0) return theta_;
  std::normal_distribution<double> gauss;
  Vec r(k);
  for (Eigen::Index i = 0; i < k; ++i) r(i) = gauss(rng_);
  Vec d = null_basis_ * r;
  double lo = -1e300, hi = 1e300;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (std::abs(d(i)) < 1e-14) continue;
    double t1 = (-1.0 - theta_(i)) / d(i);
    double t2 = (1.0 - theta_(i)) / d(i);
    lo = std::max(lo, std::min(t1, t2));
    hi = std::min(hi, std::max(t1, t2));
  }
  if (!(lo <= hi) || lo < -1e299) return theta_;
  lo = std::min(lo, 0.0);
  hi = std::max(hi, 0.0);
  if (endpoint) {
    double t = std::bernoulli_distribution(0.5)(rng_) ? lo : hi;
    return (theta_ + t * d).cwiseMax(-1.0).cwiseMin(1.0);
  }
  double t = std::uniform_real_distribution<double>(lo, hi)(rng_);
  theta_ = (theta_ + t * d).cwiseMax(-1.0).cwiseMin(1.0);
  return theta_;
}

Vec MemberSampler::sample() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double roll = unit(rng_);
  Vec theta;
  if (roll < 0.1) {
    std::normal_distribution<double> gauss;
    Vec h(set_.dim());
    for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = gauss(rng_);
    theta = support_point(set_, h).theta;
  } else if (roll < 0.3) {
    theta = walk_step(true);
  } else {
    for (int s = 0; s < kWalkSteps; ++s) theta = walk_step(false);
  }
  return set_.generators() * theta + set_.center();
}

std::vector<Vec> MemberSampler::samples(int count) {
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(sample());
  return out;
}

std::vector<Vec> sample_box(const Hyperbox& box, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vec x(box.dim());
    for (Eigen::Index i = 0; i < box.dim(); ++i)
      x(i) = box.lower()(i) + unit(rng) * (box.upper()(i) - box.lower()(i));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace czreach
