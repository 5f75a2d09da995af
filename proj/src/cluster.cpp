#include "wtsp/cluster.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "wtsp/path_dp.hpp"

namespace wtsp {

namespace {

double sq_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

// Points on a common horizontal line admit an O(log k) nearest-centroid
// query; duplicates collapse to the lowest cluster index, which also wins
// every distance tie, exactly as the linear scan would decide.
struct SortedCentroids {
  std::vector<std::pair<double, int>> entries;  // (x, cluster), deduped

  explicit SortedCentroids(const std::vector<std::array<double, 2>>& centroids) {
    for (int c = 0; c < static_cast<int>(centroids.size()); ++c) {
      entries.emplace_back(centroids[static_cast<size_t>(c)][0], c);
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const auto& a, const auto& b) {
                                return a.first == b.first;
                              }),
                  entries.end());
  }

  int nearest(double x) const {
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), x,
        [](const auto& e, double v) { return e.first < v; });
    double best_d = std::numeric_limits<double>::infinity();
    int best_c = -1;
    auto consider = [&](const std::pair<double, int>& e) {
      const double dx = e.first - x;
      const double d = dx * dx;
      if (d < best_d || (d == best_d && e.second < best_c)) {
        best_d = d;
        best_c = e.second;
      }
    };
    if (it != entries.end()) consider(*it);
    if (it != entries.begin()) consider(*(it - 1));
    return best_c;
  }
};

}  // namespace

KMeansResult kmeans(const std::vector<std::array<double, 2>>& points, int k,
                    unsigned seed, int max_iters) {
  if (k <= 0) throw std::invalid_argument("cluster count must be positive");
  if (static_cast<size_t>(k) > points.size()) {
    throw std::invalid_argument("cluster count exceeds point count");
  }
  std::mt19937 gen(seed);
  std::vector<int> indices(points.size());
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<int> chosen;
  std::sample(indices.begin(), indices.end(), std::back_inserter(chosen),
              static_cast<size_t>(k), gen);
  KMeansResult res;
  res.centroids.reserve(static_cast<size_t>(k));
  for (int idx : chosen) res.centroids.push_back(points[static_cast<size_t>(idx)]);
  res.assignment.assign(points.size(), 0);

  bool one_dimensional = true;
  for (const auto& p : points) {
    if (p[1] != points.front()[1]) {
      one_dimensional = false;
      break;
    }
  }

  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> next(points.size());
    if (one_dimensional) {
      SortedCentroids sorted(res.centroids);
      for (size_t i = 0; i < points.size(); ++i) {
        next[i] = sorted.nearest(points[i][0]);
      }
    } else {
      for (size_t i = 0; i < points.size(); ++i) {
        double best_d = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (int c = 0; c < k; ++c) {
          const double d = sq_dist(points[i], res.centroids[static_cast<size_t>(c)]);
          if (d < best_d) {
            best_d = d;
            best_c = c;
          }
        }
        next[i] = best_c;
      }
    }
    const bool unchanged = iter > 0 && next == res.assignment;
    res.assignment = std::move(next);
    if (unchanged) break;
    std::vector<std::array<double, 2>> sums(static_cast<size_t>(k), {0.0, 0.0});
    std::vector<int> counts(static_cast<size_t>(k), 0);
    for (size_t i = 0; i < points.size(); ++i) {
      const int c = res.assignment[i];
      sums[static_cast<size_t>(c)][0] += points[i][0];
      sums[static_cast<size_t>(c)][1] += points[i][1];
      ++counts[static_cast<size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<size_t>(c)] > 0) {
        res.centroids[static_cast<size_t>(c)] = {
            sums[static_cast<size_t>(c)][0] / counts[static_cast<size_t>(c)],
            sums[static_cast<size_t>(c)][1] / counts[static_cast<size_t>(c)]};
      }
    }
  }
  return res;
}

ClusteredInstance build_clustered_instance(const WTspInstance& instance,
                                           const std::vector<ClusterItem>& items,
                                           int k, unsigned seed) {
  if (instance.metric_kind() != MetricKind::Path) {
    throw std::invalid_argument("clustering needs a path-metric instance");
  }
  for (const ClusterItem& item : items) {
    if (item.node < 0 || item.node >= instance.n()) {
      throw std::invalid_argument("item placed at an unknown node");
    }
  }
  if (k <= 0) {
    k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(instance.n()))));
  }
  k = std::min<int>(k, static_cast<int>(items.size()));

  ClusterMapping mapping;
  mapping.items = items;
  if (!items.empty()) {
    std::vector<std::array<double, 2>> points;
    points.reserve(items.size());
    for (const ClusterItem& item : items) {
      points.push_back({instance.coordinate(item.node), 0.0});
    }
    const KMeansResult km = kmeans(points, k, seed);
    for (int c = 0; c < k; ++c) {
      ClusterInfo info;
      double best_d = std::numeric_limits<double>::infinity();
      int best_id = std::numeric_limits<int>::max();
      for (size_t i = 0; i < items.size(); ++i) {
        if (km.assignment[i] != c) continue;
        info.member_ids.push_back(items[i].id);
        info.total_weight += items[i].weight;
        info.total_profit += items[i].profit;
        const double d = sq_dist(points[i], km.centroids[static_cast<size_t>(c)]);
        if (d < best_d || (d == best_d && items[i].id < best_id)) {
          best_d = d;
          best_id = items[i].id;
          info.representative = items[i].node;
        }
      }
      if (info.member_ids.empty()) continue;
      std::sort(info.member_ids.begin(), info.member_ids.end());
      mapping.clusters.push_back(std::move(info));
    }
  }

  std::vector<NodeId> reduced_nodes{instance.start()};
  for (const ClusterInfo& info : mapping.clusters) {
    reduced_nodes.push_back(info.representative);
  }
  std::sort(reduced_nodes.begin(), reduced_nodes.end(),
            [&](NodeId a, NodeId b) {
              return instance.path_position(a) < instance.path_position(b);
            });
  reduced_nodes.erase(std::unique(reduced_nodes.begin(), reduced_nodes.end()),
                      reduced_nodes.end());

  const int m = static_cast<int>(reduced_nodes.size());
  std::vector<double> gaps;
  gaps.reserve(static_cast<size_t>(m) - 1);
  for (int i = 0; i + 1 < m; ++i) {
    gaps.push_back(instance.coordinate(reduced_nodes[static_cast<size_t>(i) + 1]) -
                   instance.coordinate(reduced_nodes[static_cast<size_t>(i)]));
  }
  std::vector<double> weights(static_cast<size_t>(m), 0.0);
  NodeId reduced_start = 0;
  for (int i = 0; i < m; ++i) {
    if (reduced_nodes[static_cast<size_t>(i)] == instance.start()) {
      reduced_start = i;
      weights[static_cast<size_t>(i)] = instance.weight(instance.start());
    }
  }
  for (const ClusterInfo& info : mapping.clusters) {
    const auto it = std::find(reduced_nodes.begin(), reduced_nodes.end(),
                              info.representative);
    weights[static_cast<size_t>(it - reduced_nodes.begin())] += info.total_weight;
  }

  return ClusteredInstance{
      WTspInstance::path(std::move(gaps), std::move(weights), reduced_start,
                         instance.f()),
      std::move(mapping), std::move(reduced_nodes)};
}

Tour expand_tour(const Tour& reduced_tour, const ClusteredInstance& clustered,
                 const WTspInstance& original) {
  if (!tour_is_valid(clustered.reduced, reduced_tour)) {
    throw std::invalid_argument("reduced tour is invalid");
  }
  const int n = original.n();
  for (NodeId v : clustered.reduced_to_original) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("cluster mapping does not fit the instance");
    }
  }
  std::unordered_map<int, NodeId> item_node;
  item_node.reserve(clustered.mapping.items.size());
  for (const ClusterItem& item : clustered.mapping.items) {
    item_node[item.id] = item.node;
  }
  // original node -> member nodes of clusters represented there
  std::vector<std::vector<NodeId>> members_at(static_cast<size_t>(n));
  for (const ClusterInfo& info : clustered.mapping.clusters) {
    std::vector<NodeId>& bucket = members_at[static_cast<size_t>(info.representative)];
    for (int id : info.member_ids) {
      const auto it = item_node.find(id);
      if (it == item_node.end()) {
        throw std::invalid_argument("cluster mapping does not fit the instance");
      }
      bucket.push_back(it->second);
    }
  }

  std::vector<bool> visited(static_cast<size_t>(n), false);
  std::vector<NodeId> seq;
  seq.reserve(static_cast<size_t>(n));
  const NodeId start = original.start();
  int direction = 1;
  for (size_t t = 0; t < reduced_tour.order.size(); ++t) {
    const NodeId here =
        clustered.reduced_to_original[static_cast<size_t>(reduced_tour.order[t])];
    if (t + 1 < reduced_tour.order.size() || t > 0) {
      const NodeId ref = t > 0 ? clustered.reduced_to_original[static_cast<size_t>(
                                     reduced_tour.order[t - 1])]
                               : here;
      const NodeId ahead =
          t > 0 ? here
                : clustered.reduced_to_original[static_cast<size_t>(
                      reduced_tour.order[t + 1])];
      const double delta = original.coordinate(ahead) - original.coordinate(ref);
      if (delta > 0.0) direction = 1;
      if (delta < 0.0) direction = -1;
    }
    std::vector<NodeId> batch;
    if (t == 0 && !visited[static_cast<size_t>(start)]) {
      visited[static_cast<size_t>(start)] = true;
      seq.push_back(start);
    }
    auto add = [&](NodeId v) {
      if (!visited[static_cast<size_t>(v)]) {
        visited[static_cast<size_t>(v)] = true;
        batch.push_back(v);
      }
    };
    add(here);
    for (NodeId v : members_at[static_cast<size_t>(here)]) add(v);
    std::sort(batch.begin(), batch.end(), [&](NodeId a, NodeId b) {
      const double ca = original.coordinate(a);
      const double cb = original.coordinate(b);
      if (ca != cb) return direction > 0 ? ca < cb : ca > cb;
      return a < b;
    });
    for (NodeId v : batch) seq.push_back(v);
  }

  // Itemless nodes: pick them up while driving over their coordinate.
  std::vector<NodeId> leftovers;
  for (NodeId v = 0; v < n; ++v) {
    if (!visited[static_cast<size_t>(v)]) leftovers.push_back(v);
  }
  if (!leftovers.empty()) {
    std::vector<NodeId> filled;
    filled.reserve(static_cast<size_t>(n));
    for (size_t i = 0; i < seq.size(); ++i) {
      const NodeId a = seq[i];
      const NodeId b = seq[(i + 1) % seq.size()];
      filled.push_back(a);
      const double ca = original.coordinate(a);
      const double cb = original.coordinate(b);
      std::vector<NodeId> passing;
      for (NodeId v : leftovers) {
        if (visited[static_cast<size_t>(v)]) continue;
        const double cv = original.coordinate(v);
        if (cv >= std::min(ca, cb) && cv <= std::max(ca, cb)) {
          passing.push_back(v);
          visited[static_cast<size_t>(v)] = true;
        }
      }
      std::sort(passing.begin(), passing.end(), [&](NodeId x, NodeId y) {
        const double cx = original.coordinate(x);
        const double cy = original.coordinate(y);
        if (cx != cy) return cb >= ca ? cx < cy : cx > cy;
        return x < y;
      });
      for (NodeId v : passing) filled.push_back(v);
    }
    seq = std::move(filled);
    // Anything left lies outside every driven stretch; attach it next to the
    // coordinate-nearest visited node.
    for (NodeId v : leftovers) {
      if (visited[static_cast<size_t>(v)]) continue;
      size_t best_slot = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < seq.size(); ++i) {
        const double d =
            std::abs(original.coordinate(seq[i]) - original.coordinate(v));
        if (d < best_d) {
          best_d = d;
          best_slot = i;
        }
      }
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best_slot) + 1, v);
      visited[static_cast<size_t>(v)] = true;
    }
  }

  Tour full;
  full.order = std::move(seq);
  if (!tour_is_valid(original, full)) {
    throw std::invalid_argument("cluster mapping does not fit the instance");
  }
  return full;
}

ClusteredSolveResult clustered_solve(const WTspInstance& instance,
                                     const std::vector<ClusterItem>& items,
                                     int k, unsigned seed) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  ClusteredInstance clustered = build_clustered_instance(instance, items, k, seed);
  const auto t1 = clock::now();
  PathDpResult reduced = solve_path_fixed_start(clustered.reduced);
  const auto t2 = clock::now();
  ClusteredSolveResult res;
  res.tour = expand_tour(reduced.tour, clustered, instance);
  res.cost = tour_cost(instance, res.tour);
  const auto t3 = clock::now();
  res.reduced_cost = reduced.cost;
  res.cluster_seconds = std::chrono::duration<double>(t1 - t0).count();
  res.dp_seconds = std::chrono::duration<double>(t2 - t1).count();
  res.expand_seconds = std::chrono::duration<double>(t3 - t2).count();
  return res;
}

}  // namespace wtsp
