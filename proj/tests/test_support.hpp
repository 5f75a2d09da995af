#pragma once

// Random instance generators shared by the test binaries. Everything draws
// from a caller-owned engine, so a fixed seed reproduces the whole suite.
// Integer gaps, weights, thresholds, and rates keep small-instance costs
// exactly representable, which lets solver-vs-oracle checks use equality.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "wtsp/cost_function.hpp"
#include "wtsp/instance.hpp"
#include "wtsp/star_approx.hpp"

namespace testgen {

inline int uniform_int(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Monotone step function with 1..4 integer thresholds and nondecreasing
// integer rates. min_rate > 0 avoids all-free edges; allow_infinite lets
// the beyond-threshold band become impassable.
inline wtsp::CostFunction random_step(std::mt19937& rng, int min_rate = 0,
                                      bool allow_infinite = true) {
  const int bands = uniform_int(rng, 1, 4);
  std::vector<double> thresholds;
  int t = uniform_int(rng, 0, 6);
  for (int k = 0; k < bands; ++k) {
    thresholds.push_back(t);
    t += uniform_int(rng, 1, 8);
  }
  std::vector<double> rates;
  int r = uniform_int(rng, min_rate, min_rate + 3);
  for (int k = 0; k < bands; ++k) {
    rates.push_back(r);
    r += uniform_int(rng, 0, 4);
  }
  double beyond = r + uniform_int(rng, 0, 4);
  if (allow_infinite && uniform_int(rng, 0, 3) == 0) {
    beyond = wtsp::kInfiniteRate;
  }
  return wtsp::CostFunction::step(std::move(thresholds), std::move(rates),
                                  beyond);
}

// Path instance with integer gaps and weights in [0, 10]; about half the
// draws shuffle which node sits at which position.
inline wtsp::WTspInstance random_path_instance(std::mt19937& rng, int n,
                                               int min_rate = 0,
                                               bool allow_infinite = true) {
  std::vector<double> gaps(static_cast<size_t>(n - 1));
  for (double& g : gaps) g = uniform_int(rng, 0, 10);
  std::vector<double> weights(static_cast<size_t>(n));
  for (double& w : weights) w = uniform_int(rng, 0, 10);
  std::vector<wtsp::NodeId> order;
  if (uniform_int(rng, 0, 1) == 1) {
    order.resize(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
  }
  const wtsp::NodeId start = uniform_int(rng, 0, n - 1);
  return wtsp::WTspInstance::path(std::move(gaps), std::move(weights), start,
                                  random_step(rng, min_rate, allow_infinite),
                                  std::move(order));
}

// Star instance with integer leaf distances in [1, 10] and weights in
// [0, 10]. Finite rates keep brute-force optima finite so approximation
// ratios stay well defined.
inline wtsp::StarInstance random_star(std::mt19937& rng, int leaves) {
  wtsp::StarInstance star;
  star.center_weight = uniform_int(rng, 0, 10);
  for (int v = 0; v < leaves; ++v) {
    star.leaves.push_back({double(uniform_int(rng, 1, 10)),
                           double(uniform_int(rng, 0, 10))});
  }
  star.f = random_step(rng, 1, false);
  return star;
}

// General-metric instance from random plane points (Euclidean distances,
// so the triangle inequality holds by construction) with a linear-speed
// cost function referencing the total node weight.
inline wtsp::WTspInstance random_euclidean_instance(std::mt19937& rng,
                                                    int n) {
  std::vector<std::array<double, 2>> pts(static_cast<size_t>(n));
  for (auto& p : pts) {
    p = {double(uniform_int(rng, 0, 30)), double(uniform_int(rng, 0, 30))};
  }
  std::vector<std::vector<double>> d(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          std::hypot(pts[static_cast<size_t>(i)][0] - pts[static_cast<size_t>(j)][0],
                     pts[static_cast<size_t>(i)][1] - pts[static_cast<size_t>(j)][1]);
    }
  }
  std::vector<double> weights(static_cast<size_t>(n));
  for (double& w : weights) w = uniform_int(rng, 1, 10);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double nu_max = uniform_real(rng, 1.0, 3.0);
  const double nu_min = uniform_real(rng, 0.05, nu_max);
  const wtsp::NodeId start = uniform_int(rng, 0, n - 1);
  return wtsp::WTspInstance::general(
      std::move(d), std::move(weights), start,
      wtsp::CostFunction::linear_speed(nu_max, nu_min, total));
}

inline std::vector<std::int64_t> random_multiset(std::mt19937& rng,
                                                 int max_size) {
  const int size = uniform_int(rng, 1, max_size);
  std::vector<std::int64_t> s(static_cast<size_t>(size));
  for (auto& v : s) v = uniform_int(rng, 1, 9);
  return s;
}

}  // namespace testgen
