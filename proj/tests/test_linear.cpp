#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "wtsp/instance.hpp"
#include "wtsp/linear_start.hpp"
#include "wtsp/oracle.hpp"
#include "test_support.hpp"

using namespace wtsp;

namespace {

double shortest_cycle_length(const WTspInstance& inst) {
  return brute_force_wtsp(inst.with_cost_function(CostFunction::constant(1.0)))
      .cost;
}

NormalizedTour uniform_norm(int n, double eps) {
  NormalizedTour norm;
  norm.order.resize(static_cast<size_t>(n));
  std::iota(norm.order.begin(), norm.order.end(), 0);
  norm.gaps.assign(static_cast<size_t>(n), 1.0);
  norm.weights.assign(static_cast<size_t>(n), 1.0);
  norm.eps = eps;
  norm.total_distance = n;
  norm.total_weight = n;
  return norm;
}

}  // namespace

TEST_CASE("tsp approximation is a tour from the start within twice optimal") {
  std::mt19937 rng(17);
  for (int it = 0; it < 40; ++it) {
    const int n = testgen::uniform_int(rng, 3, 8);
    const WTspInstance inst = testgen::random_euclidean_instance(rng, n);
    const Tour tour = metric_tsp_approx(inst);
    REQUIRE(tour_is_valid(inst, tour));
    CHECK(tour.order[0] == inst.start());
    CHECK(tour_length(inst, tour) <=
          2.0 * shortest_cycle_length(inst) + 1e-9);
  }

  SUBCASE("three nodes are always optimal") {
    const WTspInstance inst = testgen::random_euclidean_instance(rng, 3);
    CHECK(tour_length(inst, metric_tsp_approx(inst)) ==
          doctest::Approx(shortest_cycle_length(inst)));
  }
  SUBCASE("collinear points cost at most the doubled span") {
    const WTspInstance line = WTspInstance::path(
        {2.0, 3.0, 1.0, 4.0}, {1.0, 1.0, 1.0, 1.0, 1.0}, 2,
        CostFunction::constant(1.0));
    const Tour tour = metric_tsp_approx(line);
    REQUIRE(tour_is_valid(line, tour));
    CHECK(tour_length(line, tour) <= 2.0 * 10.0 + 1e-9);
  }
}

TEST_CASE("normalization rescales gaps and weights to sum to n") {
  std::mt19937 rng(19);
  for (int it = 0; it < 40; ++it) {
    const int n = testgen::uniform_int(rng, 3, 8);
    const WTspInstance inst = testgen::random_euclidean_instance(rng, n);
    const Tour tour = metric_tsp_approx(inst);
    if (!(tour_length(inst, tour) > 0.0)) continue;
    const NormalizedTour norm = normalize_tour(inst, tour, 0.1);
    CHECK(std::accumulate(norm.gaps.begin(), norm.gaps.end(), 0.0) ==
          doctest::Approx(n).epsilon(1e-9));
    CHECK(std::accumulate(norm.weights.begin(), norm.weights.end(), 0.0) ==
          doctest::Approx(n).epsilon(1e-9));
  }
  const WTspInstance flat = WTspInstance::path(
      {0.0}, {1.0, 1.0}, 0, CostFunction::constant(1.0));
  CHECK_THROWS_AS(normalize_tour(flat, Tour{{0, 1}}, 0.1),
                  std::invalid_argument);
  const WTspInstance ok = WTspInstance::path(
      {1.0}, {1.0, 1.0}, 0, CostFunction::constant(1.0));
  CHECK_THROWS_AS(normalize_tour(ok, Tour{{0, 1}}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("a sequence") {
  SUBCASE("uniform instances vanish for any eps") {
    for (double eps : {0.1, 0.5, 2.0}) {
      const std::vector<double> a = a_sequence(uniform_norm(4, eps));
      for (double v : a) CHECK(v == doctest::Approx(0.0));
    }
  }
  SUBCASE("matches an independent evaluation and sums to zero") {
    std::mt19937 rng(23);
    for (int it = 0; it < 40; ++it) {
      const int n = testgen::uniform_int(rng, 3, 8);
      const WTspInstance inst = testgen::random_euclidean_instance(rng, n);
      const Tour tour = metric_tsp_approx(inst);
      if (!(tour_length(inst, tour) > 0.0)) continue;
      const double eps = testgen::uniform_real(rng, 0.05, 1.0);
      const NormalizedTour norm = normalize_tour(inst, tour, eps);
      const std::vector<double> a = a_sequence(norm);
      REQUIRE(a.size() == static_cast<size_t>(n));
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double w_next = norm.weights[static_cast<size_t>((i + 1) % n)];
        const double expected =
            norm.gaps[static_cast<size_t>(i)] - w_next + eps * (1.0 - w_next);
        CHECK(a[static_cast<size_t>(i)] == doctest::Approx(expected));
        sum += a[static_cast<size_t>(i)];
      }
      CHECK(sum == doctest::Approx(0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("start selection") {
  SUBCASE("frozen cases") {
    CHECK(select_start({1.0, -2.0, 1.0, 0.0}) == 2);
    CHECK(select_start({0.0, 0.0, 0.0}) == 0);
    CHECK(select_start({-1.0, 1.0}) == 1);
  }
  SUBCASE("selected start keeps all cyclic prefix sums nonnegative") {
    std::mt19937 rng(29);
    for (int it = 0; it < 200; ++it) {
      const int n = testgen::uniform_int(rng, 2, 9);
      std::vector<double> a(static_cast<size_t>(n));
      double sum = 0.0;
      for (int i = 0; i + 1 < n; ++i) {
        a[static_cast<size_t>(i)] = testgen::uniform_int(rng, -5, 5);
        sum += a[static_cast<size_t>(i)];
      }
      a[static_cast<size_t>(n - 1)] = -sum;
      const int s = select_start(a);
      REQUIRE(s >= 0);
      REQUIRE(s < n);
      double prefix = 0.0;
      for (int i = 0; i < n; ++i) {
        prefix += a[static_cast<size_t>((s + i) % n)];
        CHECK(prefix >= -1e-9);
      }
    }
  }
  SUBCASE("rejects sequences that do not cancel") {
    CHECK_THROWS_AS(select_start({1.0, 1.0}), std::invalid_argument);
  }
}

TEST_CASE("scaled duration") {
  SUBCASE("uniform case evaluated by hand") {
    // Speeds 3, 2, 1 over unit gaps.
    const NormalizedTour norm = uniform_norm(3, 0.5);
    for (int s = 0; s < 3; ++s) {
      CHECK(scaled_duration(norm, s) ==
            doctest::Approx(1.0 / 3.0 + 1.0 / 2.0 + 1.0));
    }
  }
  SUBCASE("the entry node's weight never slows the walk") {
    NormalizedTour norm = uniform_norm(3, 0.5);
    norm.weights = {3.0, 0.0, 0.0};
    // From 0 the heavy weight stays uncollected until the end.
    CHECK(std::isfinite(scaled_duration(norm, 0)));
    // From 1 the heavy node is entered mid-tour and stalls the last gap.
    CHECK(std::isinf(scaled_duration(norm, 1)));
  }
  SUBCASE("bound formula") {
    CHECK(duration_bound(3, 0.5) ==
          doctest::Approx(1.5 * (std::log(3.0) + 1.0 - std::log(0.5))));
    CHECK(duration_bound(10, 0.1) ==
          doctest::Approx(1.1 * (std::log(10.0) + 1.0 - std::log(0.1))));
  }
}

TEST_CASE("end-to-end linear solve") {
  std::mt19937 rng(37);

  SUBCASE("tour is a rotation of the tsp approximation") {
    for (int it = 0; it < 25; ++it) {
      const int n = testgen::uniform_int(rng, 4, 9);
      const WTspInstance inst = testgen::random_euclidean_instance(rng, n);
      const LinearSolveResult res = solve_linear(inst, 1.0 / n);
      REQUIRE(res.tour.order.size() == static_cast<size_t>(n));
      const Tour base = metric_tsp_approx(inst);
      for (int i = 0; i < n; ++i) {
        CHECK(res.tour.order[static_cast<size_t>(i)] ==
              base.order[static_cast<size_t>((res.rotation + i) % n)]);
      }
    }
  }
  SUBCASE("duration meets the logarithmic bound") {
    for (int it = 0; it < 60; ++it) {
      const int n = testgen::uniform_int(rng, 4, 9);
      const WTspInstance inst = testgen::random_euclidean_instance(rng, n);
      const LinearSolveResult res = solve_linear(inst, 1.0 / n);
      CHECK(std::isfinite(res.duration));
      CHECK(res.duration <= res.bound + 1e-9);
      CHECK(res.bound == doctest::Approx(duration_bound(n, 1.0 / n)));
    }
  }
  SUBCASE("cost stays within the product bound of the optimum") {
    for (int it = 0; it < 30; ++it) {
      const int n = testgen::uniform_int(rng, 4, 8);
      const WTspInstance inst = testgen::random_euclidean_instance(rng, n);
      const double eps = 1.0 / n;
      const LinearSolveResult res = solve_linear(inst, eps);
      const double opt = brute_force_wtsp(inst).cost;
      REQUIRE(opt > 0.0);
      CHECK(res.cost <= 2.0 * duration_bound(n, eps) * opt + 1e-9);
    }
  }
  SUBCASE("no slowdown degenerates to plain length over speed") {
    const WTspInstance inst =
        testgen::random_euclidean_instance(rng, 6).with_cost_function(
            CostFunction::linear_speed(2.0, 2.0, 10.0));
    const LinearSolveResult res = solve_linear(inst, 0.2);
    CHECK(res.cost == doctest::Approx(tour_length(inst, res.tour) / 2.0));
  }
  SUBCASE("explicit speed overload rebuilds the cost function") {
    const WTspInstance raw = testgen::random_euclidean_instance(rng, 6);
    const WTspInstance with_f = raw.with_cost_function(
        CostFunction::linear_speed(3.0, 0.5, raw.total_weight()));
    const LinearSolveResult a = solve_linear(raw, 3.0, 0.5, 0.25);
    const LinearSolveResult b = solve_linear(with_f, 0.25);
    CHECK(a.cost == doctest::Approx(b.cost));
    CHECK(a.tour.order == b.tour.order);
  }
  SUBCASE("validation") {
    const WTspInstance inst = testgen::random_euclidean_instance(rng, 5);
    CHECK_THROWS_AS(solve_linear(inst, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(
        solve_linear(inst.with_cost_function(CostFunction::constant(1.0)),
                     0.1),
        std::invalid_argument);
  }
}
