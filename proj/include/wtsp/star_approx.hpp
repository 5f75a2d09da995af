#pragma once

#include <utility>
#include <vector>

#include "wtsp/cost_function.hpp"
#include "wtsp/instance.hpp"

namespace wtsp {

struct StarLeaf {
  double distance = 0.0;
  double weight = 0.0;
};

// Center node plus leaves; every leaf visit is an out-and-back excursion
// from the center, so tours are just leaf orders.
struct StarInstance {
  double center_weight = 0.0;
  std::vector<StarLeaf> leaves;
  CostFunction f = CostFunction::constant(1.0);
};

enum class KnapsackMode { Exact, Fptas };

struct ZeroLeafMerge {
  StarInstance reduced;
  std::vector<int> merged_ids;  // zero-distance leaves folded into the center
  std::vector<int> kept_ids;    // reduced leaf index -> original leaf index
};

// Folds zero-distance leaves into the center; their weight joins the center
// weight and is therefore never carried, matching a visit at the very end
// of the tour where it costs nothing.
ZeroLeafMerge merge_zero_distance_leaves(const StarInstance& star);

// Divides all leaf distances by their minimum so the smallest becomes 1.
// Returns the divisor; multiply distances (or costs under a constant f)
// by it to map back. Requires strictly positive distances.
std::pair<StarInstance, double> scale_instance(const StarInstance& star);

// Doubling-budget assembly: for budgets 2^1, 2^2, ... up to the first power
// of two covering the total round-trip distance, pick the (approximately)
// heaviest leaf subset whose round-trip distance fits the budget, then emit
// batches from the largest budget down so that leaves already affordable
// under a smaller budget are deferred. Returns leaf indices in visit order.
// eps is only consulted in Fptas mode.
std::vector<int> build_tour(const StarInstance& star, double eps,
                            KnapsackMode mode);

// w -> total length of round-trip segments whose return leg carries
// accumulated weight >= w. Nonincreasing step function.
class RoundTripProfile {
 public:
  // steps: (weight threshold, profile value on (previous threshold, this]).
  explicit RoundTripProfile(std::vector<std::pair<double, double>> steps);

  double value(double w) const;
  const std::vector<std::pair<double, double>>& steps() const { return steps_; }
  std::vector<double> breakpoints() const;

 private:
  std::vector<std::pair<double, double>> steps_;
};

RoundTripProfile round_trip_profile(const StarInstance& star,
                                    const std::vector<int>& order);

// Sum over visited leaves of [f(W_before) + f(W_before + w_v)] * d_v with
// W_before the weight of previously visited leaves; the center weight never
// enters because the tour starts there.
double star_tour_cost(const StarInstance& star, const std::vector<int>& order);

// Conversions to and from the general instance type. Node 0 is the center;
// leaf i becomes node i + 1. The converted instance starts at the center.
WTspInstance star_to_wtsp(const StarInstance& star);
StarInstance wtsp_to_star(const WTspInstance& instance);

// Expands a leaf order into a full node permutation of star_to_wtsp form.
Tour expand_leaf_order(const StarInstance& star, const std::vector<int>& order);

struct StarSolveResult {
  Tour tour;
  double cost = 0.0;
};

// End-to-end approximation on a star-metric instance. A center start runs
// the assembly directly; a leaf start walks to the center first and closes
// back to the leaf, which shifts the cost by a fixed additive amount
// independent of the chosen leaf order.
StarSolveResult solve_star(const WTspInstance& instance, double eps,
                           KnapsackMode mode);

}  // namespace wtsp
