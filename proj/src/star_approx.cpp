#include "wtsp/star_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wtsp/oracle.hpp"

namespace wtsp {

ZeroLeafMerge merge_zero_distance_leaves(const StarInstance& star) {
  ZeroLeafMerge out;
  out.reduced.center_weight = star.center_weight;
  out.reduced.f = star.f;
  for (int i = 0; i < static_cast<int>(star.leaves.size()); ++i) {
    const StarLeaf& leaf = star.leaves[static_cast<size_t>(i)];
    if (leaf.distance == 0.0) {
      out.reduced.center_weight += leaf.weight;
      out.merged_ids.push_back(i);
    } else {
      out.reduced.leaves.push_back(leaf);
      out.kept_ids.push_back(i);
    }
  }
  return out;
}

std::pair<StarInstance, double> scale_instance(const StarInstance& star) {
  if (star.leaves.empty()) return {star, 1.0};
  double min_d = std::numeric_limits<double>::infinity();
  for (const StarLeaf& leaf : star.leaves) {
    if (!(leaf.distance > 0.0)) {
      throw std::invalid_argument("scaling needs strictly positive leaf distances");
    }
    min_d = std::min(min_d, leaf.distance);
  }
  StarInstance scaled = star;
  for (StarLeaf& leaf : scaled.leaves) leaf.distance /= min_d;
  return {scaled, min_d};
}

std::vector<int> build_tour(const StarInstance& star, double eps,
                            KnapsackMode mode) {
  const int m = static_cast<int>(star.leaves.size());
  if (m == 0) return {};
  std::vector<KnapsackItem> items(static_cast<size_t>(m));
  double total_round_trip = 0.0;
  for (int i = 0; i < m; ++i) {
    items[static_cast<size_t>(i)] = {i, 2.0 * star.leaves[static_cast<size_t>(i)].distance,
                                     star.leaves[static_cast<size_t>(i)].weight};
    total_round_trip += items[static_cast<size_t>(i)].size;
  }
  int top = 1;
  double budget = 2.0;
  while (budget < total_round_trip) {
    budget *= 2.0;
    ++top;
  }
  // budget index -> leaves affordable at that budget; the largest budget
  // covers everything by construction and is forced to the full set.
  std::vector<std::vector<char>> member(
      static_cast<size_t>(top) + 1, std::vector<char>(static_cast<size_t>(m), 0));
  std::fill(member[static_cast<size_t>(top)].begin(), member[static_cast<size_t>(top)].end(), 1);
  double b = 2.0;
  for (int i = 1; i < top; ++i, b *= 2.0) {
    const KnapsackResult sol = (mode == KnapsackMode::Exact)
                                   ? knapsack_exact(items, b)
                                   : knapsack_fptas(items, b, eps);
    for (int id : sol.ids) member[static_cast<size_t>(i)][static_cast<size_t>(id)] = 1;
  }
  std::vector<int> order;
  order.reserve(static_cast<size_t>(m));
  std::vector<char> emitted(static_cast<size_t>(m), 0);
  for (int i = top; i >= 1; --i) {
    for (int v = 0; v < m; ++v) {
      if (!member[static_cast<size_t>(i)][static_cast<size_t>(v)] || emitted[static_cast<size_t>(v)]) {
        continue;
      }
      bool deferred = false;
      for (int k = 1; k < i; ++k) {
        if (member[static_cast<size_t>(k)][static_cast<size_t>(v)]) {
          deferred = true;
          break;
        }
      }
      if (deferred) continue;
      order.push_back(v);
      emitted[static_cast<size_t>(v)] = 1;
    }
  }
  return order;
}

RoundTripProfile::RoundTripProfile(std::vector<std::pair<double, double>> steps)
    : steps_(std::move(steps)) {}

double RoundTripProfile::value(double w) const {
  for (const auto& [threshold, total] : steps_) {
    if (w <= threshold) return total;
  }
  return 0.0;
}

std::vector<double> RoundTripProfile::breakpoints() const {
  std::vector<double> out;
  out.reserve(steps_.size());
  for (const auto& s : steps_) out.push_back(s.first);
  return out;
}

RoundTripProfile round_trip_profile(const StarInstance& star,
                                    const std::vector<int>& order) {
  std::vector<std::pair<double, double>> legs;  // (return weight, 2d)
  double carried = 0.0;
  for (int v : order) {
    const StarLeaf& leaf = star.leaves[static_cast<size_t>(v)];
    carried += leaf.weight;
    legs.emplace_back(carried, 2.0 * leaf.distance);
  }
  std::vector<std::pair<double, double>> steps;
  double suffix = 0.0;
  for (auto it = legs.rbegin(); it != legs.rend(); ++it) {
    suffix += it->second;
    if (!steps.empty() && steps.back().first == it->first) {
      steps.back().second = suffix;
    } else {
      steps.emplace_back(it->first, suffix);
    }
  }
  std::reverse(steps.begin(), steps.end());
  return RoundTripProfile(std::move(steps));
}

double star_tour_cost(const StarInstance& star, const std::vector<int>& order) {
  double carried = 0.0;
  double cost = 0.0;
  const CostFunction& f = star.f;
  for (int v : order) {
    const StarLeaf& leaf = star.leaves[static_cast<size_t>(v)];
    cost += edge_cost(f(carried), leaf.distance);
    carried += leaf.weight;
    cost += edge_cost(f(carried), leaf.distance);
  }
  return cost;
}

WTspInstance star_to_wtsp(const StarInstance& star) {
  std::vector<double> dist;
  std::vector<double> weights;
  dist.reserve(star.leaves.size() + 1);
  weights.reserve(star.leaves.size() + 1);
  dist.push_back(0.0);
  weights.push_back(star.center_weight);
  for (const StarLeaf& leaf : star.leaves) {
    dist.push_back(leaf.distance);
    weights.push_back(leaf.weight);
  }
  return WTspInstance::star(0, dist, weights, 0, star.f);
}

StarInstance wtsp_to_star(const WTspInstance& instance) {
  if (instance.metric_kind() != MetricKind::Star) {
    throw std::invalid_argument("conversion needs a star-metric instance");
  }
  const NodeId c = instance.star_center();
  StarInstance star;
  star.center_weight = instance.weight(c);
  star.f = instance.f();
  for (NodeId v = 0; v < instance.n(); ++v) {
    if (v == c) continue;
    star.leaves.push_back({instance.distance(c, v), instance.weight(v)});
  }
  return star;
}

Tour expand_leaf_order(const StarInstance& star, const std::vector<int>& order) {
  Tour tour;
  tour.order.reserve(star.leaves.size() + 1);
  tour.order.push_back(0);
  for (int v : order) tour.order.push_back(v + 1);
  return tour;
}

namespace {

// Runs merge + scale + assembly and maps the result back to original leaf
// indices; merged zero-distance leaves go last, where they cost nothing.
std::vector<int> assemble_order(const StarInstance& star, double eps,
                                KnapsackMode mode) {
  ZeroLeafMerge merge = merge_zero_distance_leaves(star);
  std::vector<int> order;
  if (!merge.reduced.leaves.empty()) {
    auto [scaled, factor] = scale_instance(merge.reduced);
    (void)factor;
    for (int v : build_tour(scaled, eps, mode)) {
      order.push_back(merge.kept_ids[static_cast<size_t>(v)]);
    }
  }
  for (int v : merge.merged_ids) order.push_back(v);
  return order;
}

}  // namespace

StarSolveResult solve_star(const WTspInstance& instance, double eps,
                           KnapsackMode mode) {
  if (instance.metric_kind() != MetricKind::Star) {
    throw std::invalid_argument("star solver needs a star-metric instance");
  }
  const NodeId c = instance.star_center();
  const NodeId start = instance.start();
  StarSolveResult res;
  res.tour.order.push_back(start);
  std::vector<NodeId> leaf_nodes;  // position in the reduced star -> node id
  StarInstance star;
  star.f = instance.f();
  star.center_weight = instance.weight(c);
  for (NodeId v = 0; v < instance.n(); ++v) {
    if (v == c || v == start) continue;
    star.leaves.push_back({instance.distance(c, v), instance.weight(v)});
    leaf_nodes.push_back(v);
  }
  if (start != c) res.tour.order.push_back(c);
  for (int v : assemble_order(star, eps, mode)) {
    res.tour.order.push_back(leaf_nodes[static_cast<size_t>(v)]);
  }
  res.cost = tour_cost(instance, res.tour);
  return res;
}

}  // namespace wtsp
