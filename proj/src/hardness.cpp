#include "wtsp/hardness.hpp"

#include <algorithm>
#include <stdexcept>

#include "wtsp/oracle.hpp"

namespace wtsp {

ReducedInstance reduce_partition(const std::vector<std::int64_t>& s) {
  if (s.empty()) throw std::invalid_argument("input multiset must not be empty");
  std::int64_t lambda = 0;
  std::int64_t s_max = 0;
  for (std::int64_t x : s) {
    if (x <= 0) throw std::invalid_argument("input entries must be positive");
    lambda += x;
    s_max = std::max(s_max, x);
  }
  std::vector<double> leaf_dist;
  std::vector<double> weights;
  leaf_dist.push_back(0.0);  // center
  weights.push_back(static_cast<double>(lambda + s_max + 1));
  for (std::int64_t x : s) {
    leaf_dist.push_back(static_cast<double>(x));
    weights.push_back(static_cast<double>(x));
  }
  leaf_dist.push_back(static_cast<double>(s_max));
  weights.push_back(static_cast<double>(s_max));
  CostFunction f = CostFunction::step(
      {static_cast<double>(lambda) / 2.0, static_cast<double>(lambda + s_max)},
      {0.0, 1.0}, kInfiniteRate);
  return ReducedInstance{WTspInstance::star(0, std::move(leaf_dist),
                                            std::move(weights), 0, std::move(f)),
                         lambda, s_max};
}

ThresholdCheck check_threshold(const std::vector<std::int64_t>& s) {
  if (s.size() > 10) {
    throw std::invalid_argument("threshold check is limited to 10 entries");
  }
  const ReducedInstance reduced = reduce_partition(s);
  ThresholdCheck check;
  check.partitionable = partition_oracle(s);
  check.optimal_cost = brute_force_wtsp(reduced.instance).cost;
  check.threshold = static_cast<double>(reduced.s_max + reduced.lambda);
  if ((check.optimal_cost <= check.threshold) != check.partitionable) {
    throw std::logic_error("cost threshold disagrees with the subset-sum answer");
  }
  return check;
}

}  // namespace wtsp
