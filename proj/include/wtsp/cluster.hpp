#pragma once

#include <array>
#include <vector>

#include "wtsp/instance.hpp"

namespace wtsp {

struct KMeansResult {
  std::vector<int> assignment;  // point index -> cluster index
  std::vector<std::array<double, 2>> centroids;
};

// Lloyd's iteration from k seeded distinct points; nearest-centroid ties go
// to the lowest cluster index, empty clusters keep their centroid.
// Deterministic for a given seed. Requires 0 < k <= number of points.
KMeansResult kmeans(const std::vector<std::array<double, 2>>& points, int k,
                    unsigned seed, int max_iters = 100);

struct ClusterItem {
  int id = 0;
  NodeId node = 0;
  double weight = 0.0;
  double profit = 0.0;
};

struct ClusterInfo {
  NodeId representative = 0;
  std::vector<int> member_ids;
  double total_weight = 0.0;
  double total_profit = 0.0;
};

struct ClusterMapping {
  std::vector<ClusterInfo> clusters;
  std::vector<ClusterItem> items;  // originals, with their true nodes
};

struct ClusteredInstance {
  WTspInstance reduced;
  ClusterMapping mapping;
  std::vector<NodeId> reduced_to_original;  // reduced node id -> original node
};

// Groups the items into k clusters by the line coordinate of their nodes,
// sums weight and profit per cluster at the member node closest to the
// centroid (smallest item id on ties), and builds the path instance over
// the representative nodes plus the start node. k defaults to ceil(sqrt(n))
// when passed as 0.
ClusteredInstance build_clustered_instance(const WTspInstance& instance,
                                           const std::vector<ClusterItem>& items,
                                           int k, unsigned seed);

// Turns a tour of the reduced instance into a tour of the original one.
// When a representative is reached, its cluster members are visited
// contiguously, swept in the current direction of travel; nodes carrying no
// items are picked up in passing where possible and otherwise attached
// after their nearest visited node.
Tour expand_tour(const Tour& reduced_tour, const ClusteredInstance& clustered,
                 const WTspInstance& original);

struct ClusteredSolveResult {
  Tour tour;                  // full tour on the original instance
  double cost = 0.0;          // evaluated on the original instance
  double reduced_cost = 0.0;  // interval DP optimum on the reduced instance
  double cluster_seconds = 0.0;
  double dp_seconds = 0.0;
  double expand_seconds = 0.0;
};

// Cluster, solve the reduced instance exactly, expand.
ClusteredSolveResult clustered_solve(const WTspInstance& instance,
                                     const std::vector<ClusterItem>& items,
                                     int k, unsigned seed);

}  // namespace wtsp
