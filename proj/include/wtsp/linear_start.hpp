#pragma once

#include <vector>

#include "wtsp/instance.hpp"

namespace wtsp {

// Closed tour of length at most twice the optimal TSP length, built from a
// minimum spanning tree (Prim, smallest-index tie-breaks) walked in
// preorder from the instance's start node with children in ascending order.
Tour metric_tsp_approx(const WTspInstance& instance);

// A tour rescaled so that total gap length and total weight both equal n,
// with top speed n and minimum speed 0. Gaps and weights are stored in tour
// order: gaps[i] spans order[i] -> order[i+1] (cyclic), weights[i] belongs
// to order[i].
struct NormalizedTour {
  std::vector<NodeId> order;
  std::vector<double> gaps;
  std::vector<double> weights;
  double eps = 0.0;
  double total_distance = 0.0;  // original units
  double total_weight = 0.0;    // original units
};

// Rescales the given tour on the instance. Requires a positive total tour
// length; a zero total weight yields all-zero scaled weights.
NormalizedTour normalize_tour(const WTspInstance& instance, const Tour& tour,
                              double eps);

// a[i] = gaps[i] - weights[i+1] + eps * (1 - weights[i+1]), cyclic. Sums to
// zero whenever both normalization sums hold.
std::vector<double> a_sequence(const NormalizedTour& norm);

// Smallest 0-based index s whose cyclic prefix sums all stay >= -1e-9,
// found as the position right after a minimal prefix sum of a. Requires the
// entries to sum to 0 within 1e-9.
int select_start(const std::vector<double>& a);

// Travel time of the normalized tour entered at 0-based index s: speed is
// n minus the scaled weight carried, the entry node's weight never counts,
// and speeds at or below 1e-12 make the result infinite.
double scaled_duration(const NormalizedTour& norm, int s);

// (1 + eps) * (ln n + 1 - ln eps): guaranteed ceiling for scaled_duration
// at the selected start.
double duration_bound(int n, double eps);

struct LinearSolveResult {
  Tour tour;               // rotated to begin at the selected start
  double cost = 0.0;       // tour_cost in original units
  double duration = 0.0;   // scaled units, slowdown measured with min speed 0
  double bound = 0.0;      // duration_bound(n, eps)
  int rotation = 0;        // 0-based offset into the unrotated tour
};

// End-to-end pipeline: 2-approximate TSP tour, normalization with the
// minimum speed clamped to 0, start selection, rotation. The reported cost
// uses the instance's own cost function. Requires a linear-speed cost
// function and eps > 0.
LinearSolveResult solve_linear(const WTspInstance& instance, double eps);

// Same, but with the speed range given explicitly; the instance's cost
// function is replaced by linear_speed(nu_max, nu_min, total weight).
LinearSolveResult solve_linear(const WTspInstance& instance, double nu_max,
                               double nu_min, double eps);

}  // namespace wtsp
