#pragma once

#include <cstdint>
#include <vector>

#include "wtsp/instance.hpp"

namespace wtsp {

// Star instance encoding a multiset S of positive integers: one leaf per
// entry with distance and weight both s_i, one extra leaf with distance and
// weight max(S), center weight sum(S) + max(S) + 1, and a step rate that is
// free up to sum(S)/2, costs 1 up to sum(S) + max(S), and is infinite
// beyond. The tour starts at the center.
struct ReducedInstance {
  WTspInstance instance;
  std::int64_t lambda = 0;  // sum of S
  std::int64_t s_max = 0;   // max of S
};

ReducedInstance reduce_partition(const std::vector<std::int64_t>& s);

struct ThresholdCheck {
  bool partitionable = false;
  double optimal_cost = 0.0;
  double threshold = 0.0;  // s_max + lambda
};

// Brute-forces the reduced instance from the center and compares against
// the subset-sum answer: a cost of at most s_max + lambda must coincide
// with S being partitionable into two equal halves. |S| <= 10.
ThresholdCheck check_threshold(const std::vector<std::int64_t>& s);

}  // namespace wtsp
