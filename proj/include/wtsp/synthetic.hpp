#pragma once

#include <vector>

#include "wtsp/cluster.hpp"
#include "wtsp/instance.hpp"

namespace wtsp {

struct SyntheticInstance {
  WTspInstance instance;
  std::vector<ClusterItem> items;
};

// Benchmark-style line instance: a depot at coordinate 0 plus n - 1 nodes
// drawn uniformly from (0, 1000), each non-depot node holding
// items_per_city items with integer weights and profits in [1, 100]. Node
// weights are the per-node item sums; travel slows linearly from full speed
// 1.0 down to 0.1 when everything is carried. The tour starts at the depot.
SyntheticInstance make_line_instance(int n, int items_per_city, unsigned seed);

}  // namespace wtsp
