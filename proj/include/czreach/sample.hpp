#pragma once

#include "czreach/sets.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace czreach {

// Draws members of a constrained zonotope. Interior points come from a
// hit-and-run walk on the parameter polytope; a share of the draws are walk
// endpoints or LP support points so that boundaries get exercised too.
class MemberSampler {
 public:
  MemberSampler(const CZ& S, std::uint64_t seed);

  Vec sample();
  std::vector<Vec> samples(int count);

 private:
  Vec walk_step(bool endpoint);

  CZ set_;
  Mat null_basis_;
  Vec theta_;
  std::mt19937_64 rng_;
};

// uniform points of a box
std::vector<Vec> sample_box(const Hyperbox& box, int count, std::mt19937_64& rng);

}  // namespace czreach
