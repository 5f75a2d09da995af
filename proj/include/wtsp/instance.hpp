#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "wtsp/cost_function.hpp"

namespace wtsp {

using NodeId = int;

/// A closed tour: permutation of all node ids, first entry is the node the
/// agent departs from. The first node's weight is never carried; it is
/// collected when the tour closes.
struct Tour {
  std::vector<NodeId> order;
};

enum class MetricKind { General, Path, Star };

/// Weighted-TSP instance: nodes with nonnegative weights, a symmetric
/// metric, a designated start node and a cost-per-distance function of the
/// carried weight. Path and star instances keep their structure explicit so
/// distances are derived (O(1), no n x n matrix) and the structure-aware
/// solvers can exploit it. Immutable after construction.
class WTspInstance {
public:
  // Path metric: order[p] is the node at left-to-right position p and
  // gaps[p] the distance between positions p and p+1.
  static WTspInstance path(std::vector<double> gaps, std::vector<double> weights,
                           NodeId start, CostFunction f,
                           std::vector<NodeId> order = {});
  // Star metric: leaf_distances[v] is d(center, v); the center entry must
  // be zero. Leaf-to-leaf distances are sums of the two center distances.
  static WTspInstance star(NodeId center, std::vector<double> leaf_distances,
                           std::vector<double> weights, NodeId start,
                           CostFunction f);
  static WTspInstance general(std::vector<std::vector<double>> distances,
                              std::vector<double> weights, NodeId start,
                              CostFunction f);

  int n() const { return n_; }
  MetricKind metric_kind() const { return kind_; }
  NodeId start() const { return start_; }
  const CostFunction& f() const { return f_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(NodeId v) const { return weights_[static_cast<size_t>(v)]; }
  double total_weight() const { return total_weight_; }

  double distance(NodeId a, NodeId b) const {
    switch (kind_) {
      case MetricKind::Path:
        return std::abs(coords_[static_cast<size_t>(a)] - coords_[static_cast<size_t>(b)]);
      case MetricKind::Star:
        if (a == b) return 0.0;
        if (a == center_) return leaf_dist_[static_cast<size_t>(b)];
        if (b == center_) return leaf_dist_[static_cast<size_t>(a)];
        return leaf_dist_[static_cast<size_t>(a)] + leaf_dist_[static_cast<size_t>(b)];
      case MetricKind::General:
        return matrix_[static_cast<size_t>(a) * static_cast<size_t>(n_) + static_cast<size_t>(b)];
    }
    return 0.0;
  }

  // Path accessors (only valid for MetricKind::Path).
  const std::vector<NodeId>& path_order() const { return order_; }
  int path_position(NodeId v) const { return pos_[static_cast<size_t>(v)]; }
  const std::vector<double>& path_gaps() const { return gaps_; }
  // Coordinate of a node on the path line (leftmost node at 0).
  double coordinate(NodeId v) const { return coords_[static_cast<size_t>(v)]; }

  // Star accessors (only valid for MetricKind::Star).
  NodeId star_center() const { return center_; }
  const std::vector<double>& star_leaf_distances() const { return leaf_dist_; }

  WTspInstance with_start(NodeId s) const;
  WTspInstance with_cost_function(CostFunction f) const;

private:
  WTspInstance() = default;
  void init_common(std::vector<double> weights, NodeId start, CostFunction f);

  int n_ = 0;
  MetricKind kind_ = MetricKind::General;
  NodeId start_ = 0;
  CostFunction f_ = CostFunction::constant(1.0);
  std::vector<double> weights_;
  double total_weight_ = 0.0;

  std::vector<double> matrix_;      // general: row-major n*n
  std::vector<NodeId> order_;       // path: position -> node
  std::vector<int> pos_;            // path: node -> position
  std::vector<double> gaps_;        // path: n-1 consecutive gaps
  std::vector<double> coords_;      // path: node -> line coordinate
  NodeId center_ = 0;               // star
  std::vector<double> leaf_dist_;   // star: node -> distance to center
};

struct MetricViolation {
  enum class Kind { Asymmetry, NonzeroDiagonal, Negative, Triangle };
  Kind kind;
  NodeId i, j, k;  // triangle: d(i,k) > d(i,j) + d(j,k); k unused otherwise
  double slack;
  std::string describe() const;
};

// Empty result iff the distance function is a metric (symmetric, zero
// diagonal, nonnegative, triangle inequality) within 1e-9 relative slack.
std::vector<MetricViolation> validate_metric(const WTspInstance& instance);

// True iff the tour is a permutation of all nodes starting at instance.start().
bool tour_is_valid(const WTspInstance& instance, const Tour& tour);

// Travel cost of a closed tour evaluated from its own first node: each edge
// is charged at f(weight collected so far), where the first node's weight
// never counts (it is picked up when the tour closes). Throws if the order
// is not a permutation of all nodes. Returns +inf when an edge of positive
// length is traversed at an infinite rate.
double tour_cost(const WTspInstance& instance, const Tour& tour);

// Plain closed length of the tour (f ignored).
double tour_length(const WTspInstance& instance, const Tour& tour);

// Entry i (0-based) is the weight carried while traversing the edge out of
// the (i+1)-th visited node; the last entry belongs to the closing edge.
std::vector<double> carried_weights(const WTspInstance& instance, const Tour& tour);

}  // namespace wtsp
