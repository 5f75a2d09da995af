#pragma once

#include <cstdint>
#include <vector>

#include "wtsp/instance.hpp"

namespace wtsp {

struct BruteForceResult {
  Tour tour;
  double cost = 0.0;
  NodeId start = 0;
};

// Exhaustive optimum over all tours respecting the start convention; with
// free_start also over all start nodes. Ties resolved by the
// lexicographically smallest permutation (smallest start first). Guarded to
// n <= 12.
BruteForceResult brute_force_wtsp(const WTspInstance& instance,
                                  bool free_start = false);

struct KnapsackItem {
  int id = 0;
  double size = 0.0;
  double value = 0.0;
};

struct KnapsackResult {
  std::vector<int> ids;  // sorted ascending
  double total_size = 0.0;
  double total_value = 0.0;
};

// Maximum-value subset with total size <= budget. Exact: integer sizes go
// through a pseudo-polynomial DP, anything else through enumeration (item
// count <= 25). Ties resolved toward the lexicographically smallest sorted
// id sequence.
KnapsackResult knapsack_exact(const std::vector<KnapsackItem>& items,
                              double budget);

// Value-scaling approximation: total value >= (1 - eps) * optimum,
// eps in (0, 1).
KnapsackResult knapsack_fptas(const std::vector<KnapsackItem>& items,
                              double budget, double eps);

// True iff S splits into two halves of equal sum (subset-sum DP over
// positive integers).
bool partition_oracle(const std::vector<std::int64_t>& s);

}  // namespace wtsp
