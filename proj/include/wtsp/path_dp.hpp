#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wtsp/instance.hpp"

namespace wtsp {

// Interval dynamic program for instances whose nodes lie on a line. States
// are (i, j, side): positions i..j along the line are still uncollected and
// the walker sits at the left or right end of that range. The start node is
// carried through the table with its weight treated as zero, which matches
// the convention that its weight is only picked up when the tour closes.
class PathDpTable {
 public:
  enum class Side : std::uint8_t { Left = 0, Right = 1 };
  enum class Move : std::uint8_t { Adjacent = 0, Jump = 1, None = 2 };

  PathDpTable(const WTspInstance& instance, NodeId start);

  // Remaining cost from state (i, j, side); i and j are path positions.
  double value(int i, int j, Side side) const;
  Move move(int i, int j, Side side) const;

  // Total entries held, counting both sides of each interval.
  std::size_t entry_count() const { return value_.size(); }

  double final_cost() const { return final_cost_; }
  // Direction of the first collected node in the optimal peel.
  Side first_side() const { return first_side_; }

  // Optimal tour in visit order, starting at the requested node.
  Tour traceback() const;

  int n() const { return n_; }
  NodeId start() const { return start_; }

  // Weight outside positions i..j, with the start node counted as zero.
  double outside_weight(int i, int j) const;

 private:
  std::size_t index(int i, int j, Side side) const;

  const WTspInstance* inst_;
  NodeId start_;
  int n_;
  int start_pos_;
  std::vector<double> coord_;       // position -> line coordinate
  std::vector<double> hat_weight_;  // position -> weight, start zeroed
  std::vector<double> prefix_hat_;  // prefix sums of hat_weight_
  std::vector<double> value_;
  std::vector<Move> move_;
  double final_cost_;
  Side first_side_;
};

struct PathDpResult {
  Tour tour;
  double cost = 0.0;
  NodeId start = 0;
};

// Optimal tour from the instance's fixed start node. Requires a path-metric
// instance; runs in O(n^2).
PathDpResult solve_path_fixed_start(const WTspInstance& instance);

// Optimal tour over all start nodes; smallest start wins ties. O(n^3).
PathDpResult solve_path_free_start(const WTspInstance& instance);

// True when every node after the first is, at its visit time, the leftmost
// or rightmost of the still-unvisited positions.
bool is_zigzag(const WTspInstance& instance, const Tour& tour);

// Locates the first prematurely visited node of the tour (one with
// unvisited positions on both sides when reached) and moves its visit to
// just after the last node on the far side of it. Returns the adjusted
// tour, or nothing if no node is premature. Cost never increases for
// monotone cost functions.
std::optional<Tour> premature_exchange(const WTspInstance& instance,
                                       const Tour& tour);

}  // namespace wtsp
