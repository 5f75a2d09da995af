#include "wtsp/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace wtsp {

SyntheticInstance make_line_instance(int n, int items_per_city, unsigned seed) {
  if (n < 1) throw std::invalid_argument("need at least the depot node");
  if (items_per_city < 0) throw std::invalid_argument("negative item count");
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> coord_dist(0.0, 1000.0);
  std::uniform_int_distribution<int> unit_dist(1, 100);

  std::vector<double> x(static_cast<size_t>(n));
  x[0] = 0.0;  // depot
  for (int v = 1; v < n; ++v) {
    double c = coord_dist(gen);
    while (c == 0.0) c = coord_dist(gen);
    x[static_cast<size_t>(v)] = c;
  }

  std::vector<ClusterItem> items;
  items.reserve(static_cast<size_t>(n - 1) * static_cast<size_t>(items_per_city));
  std::vector<double> weights(static_cast<size_t>(n), 0.0);
  int next_id = 0;
  for (int v = 1; v < n; ++v) {
    for (int j = 0; j < items_per_city; ++j) {
      ClusterItem item;
      item.id = next_id++;
      item.node = v;
      item.weight = static_cast<double>(unit_dist(gen));
      item.profit = static_cast<double>(unit_dist(gen));
      weights[static_cast<size_t>(v)] += item.weight;
      items.push_back(item);
    }
  }

  std::vector<NodeId> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return x[static_cast<size_t>(a)] < x[static_cast<size_t>(b)];
  });
  std::vector<double> gaps;
  gaps.reserve(static_cast<size_t>(n) - 1);
  for (int p = 0; p + 1 < n; ++p) {
    gaps.push_back(x[static_cast<size_t>(order[static_cast<size_t>(p) + 1])] -
                   x[static_cast<size_t>(order[static_cast<size_t>(p)])]);
  }

  double total = 0.0;
  for (double w : weights) total += w;
  CostFunction f = CostFunction::linear_speed(1.0, 0.1, total);

  return SyntheticInstance{
      WTspInstance::path(std::move(gaps), std::move(weights), 0, std::move(f),
                         std::move(order)),
      std::move(items)};
}

}  // namespace wtsp
