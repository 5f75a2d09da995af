#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "test_support.hpp"
#include "wtsp/cluster.hpp"
#include "wtsp/instance.hpp"
#include "wtsp/json_io.hpp"
#include "wtsp/path_dp.hpp"
#include "wtsp/synthetic.hpp"

namespace {

double sq_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

double kmeans_objective(const std::vector<std::array<double, 2>>& points,
                        const wtsp::KMeansResult& res) {
  double total = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    total += sq_dist(points[i], res.centroids[static_cast<size_t>(res.assignment[i])]);
  }
  return total;
}

std::vector<std::array<double, 2>> random_points(std::mt19937& rng, int count) {
  std::vector<std::array<double, 2>> points;
  points.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    points.push_back({testgen::uniform_real(rng, 0.0, 100.0),
                      testgen::uniform_real(rng, 0.0, 100.0)});
  }
  return points;
}

}  // namespace

TEST_CASE("kmeans with one cluster per distinct point leaves every point alone") {
  std::vector<std::array<double, 2>> points = {
      {0.0, 0.0}, {5.0, 1.0}, {2.0, 8.0}, {9.0, 4.0}};
  const wtsp::KMeansResult res = wtsp::kmeans(points, 4, 7u);
  REQUIRE(res.assignment.size() == points.size());
  REQUIRE(res.centroids.size() == 4);
  std::set<int> used(res.assignment.begin(), res.assignment.end());
  CHECK(used.size() == points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& c = res.centroids[static_cast<size_t>(res.assignment[i])];
    CHECK(c[0] == doctest::Approx(points[i][0]));
    CHECK(c[1] == doctest::Approx(points[i][1]));
  }
}

TEST_CASE("kmeans separates two far apart groups") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::array<double, 2>> points;
    for (int i = 0; i < 5; ++i) {
      points.push_back({testgen::uniform_real(rng, 0.0, 1.0),
                        testgen::uniform_real(rng, 0.0, 1.0)});
    }
    for (int i = 0; i < 5; ++i) {
      points.push_back({100.0 + testgen::uniform_real(rng, 0.0, 1.0),
                        100.0 + testgen::uniform_real(rng, 0.0, 1.0)});
    }
    const wtsp::KMeansResult res = wtsp::kmeans(points, 2, 1000u + trial);
    for (int i = 1; i < 5; ++i) {
      CHECK(res.assignment[static_cast<size_t>(i)] == res.assignment[0]);
      CHECK(res.assignment[static_cast<size_t>(5 + i)] == res.assignment[5]);
    }
    CHECK(res.assignment[0] != res.assignment[5]);
  }
}

TEST_CASE("kmeans is deterministic for a fixed seed") {
  std::mt19937 rng(23);
  const std::vector<std::array<double, 2>> points = random_points(rng, 20);
  const wtsp::KMeansResult a = wtsp::kmeans(points, 4, 99u);
  const wtsp::KMeansResult b = wtsp::kmeans(points, 4, 99u);
  CHECK(a.assignment == b.assignment);
  REQUIRE(a.centroids.size() == b.centroids.size());
  for (size_t c = 0; c < a.centroids.size(); ++c) {
    CHECK(a.centroids[c][0] == b.centroids[c][0]);
    CHECK(a.centroids[c][1] == b.centroids[c][1]);
  }
}

TEST_CASE("kmeans validates the cluster count") {
  std::vector<std::array<double, 2>> points = {{0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(wtsp::kmeans(points, 0, 1u), std::invalid_argument);
  CHECK_THROWS_AS(wtsp::kmeans(points, -2, 1u), std::invalid_argument);
  CHECK_THROWS_AS(wtsp::kmeans(points, 3, 1u), std::invalid_argument);
  CHECK_THROWS_AS(wtsp::kmeans({}, 1, 1u), std::invalid_argument);
}

TEST_CASE("extra iterations never worsen the clustering objective") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int count = testgen::uniform_int(rng, 6, 30);
    const int k = testgen::uniform_int(rng, 2, std::min(count, 5));
    const std::vector<std::array<double, 2>> points = random_points(rng, count);
    const unsigned seed = 500u + trial;
    const wtsp::KMeansResult one = wtsp::kmeans(points, k, seed, 1);
    const wtsp::KMeansResult full = wtsp::kmeans(points, k, seed);
    const double j_one = kmeans_objective(points, one);
    const double j_full = kmeans_objective(points, full);
    CHECK(j_full <= j_one + 1e-6 * (1.0 + j_one));
  }
}

TEST_CASE("converged centroids are the means of their clusters") {
  std::mt19937 rng(37);
  const std::vector<std::array<double, 2>> points = random_points(rng, 24);
  const wtsp::KMeansResult res = wtsp::kmeans(points, 3, 5u);
  std::vector<std::array<double, 2>> sums(3, {0.0, 0.0});
  std::vector<int> counts(3, 0);
  for (size_t i = 0; i < points.size(); ++i) {
    const size_t c = static_cast<size_t>(res.assignment[i]);
    sums[c][0] += points[i][0];
    sums[c][1] += points[i][1];
    counts[c] += 1;
  }
  for (size_t c = 0; c < 3; ++c) {
    if (counts[c] == 0) continue;
    CHECK(res.centroids[c][0] == doctest::Approx(sums[c][0] / counts[c]));
    CHECK(res.centroids[c][1] == doctest::Approx(sums[c][1] / counts[c]));
  }
}

TEST_CASE("clustered reduction keeps the total carried weight") {
  for (unsigned seed = 0; seed < 8; ++seed) {
    const wtsp::SyntheticInstance syn = wtsp::make_line_instance(40, 3, seed);
    const wtsp::ClusteredInstance clustered =
        build_clustered_instance(syn.instance, syn.items, 0, seed);
    double original_total = 0.0;
    for (wtsp::NodeId v = 0; v < syn.instance.n(); ++v) {
      original_total += syn.instance.weight(v);
    }
    double reduced_total = 0.0;
    for (wtsp::NodeId v = 0; v < clustered.reduced.n(); ++v) {
      reduced_total += clustered.reduced.weight(v);
    }
    CHECK(reduced_total == doctest::Approx(original_total).epsilon(1e-12));
  }
}

TEST_CASE("every cluster representative holds one of its member items") {
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(30, 4, 3u);
  const wtsp::ClusteredInstance clustered =
      build_clustered_instance(syn.instance, syn.items, 5, 3u);
  std::vector<int> seen;
  for (const wtsp::ClusterInfo& info : clustered.mapping.clusters) {
    REQUIRE_FALSE(info.member_ids.empty());
    bool representative_has_member = false;
    double weight = 0.0;
    double profit = 0.0;
    for (int id : info.member_ids) {
      seen.push_back(id);
      const wtsp::ClusterItem& item = syn.items[static_cast<size_t>(id)];
      CHECK(item.id == id);
      weight += item.weight;
      profit += item.profit;
      if (item.node == info.representative) representative_has_member = true;
    }
    CHECK(representative_has_member);
    CHECK(info.total_weight == doctest::Approx(weight));
    CHECK(info.total_profit == doctest::Approx(profit));
  }
  std::sort(seen.begin(), seen.end());
  std::vector<int> all(syn.items.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(seen == all);
}

TEST_CASE("default cluster count stays near the square root of the size") {
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(101, 5, 9u);
  const wtsp::ClusteredInstance clustered =
      build_clustered_instance(syn.instance, syn.items, 0, 9u);
  const int bound = static_cast<int>(std::ceil(std::sqrt(101.0)));
  CHECK(clustered.reduced.n() <= bound + 1);
  CHECK(clustered.reduced.n() >= 2);
  CHECK(clustered.reduced.metric_kind() == wtsp::MetricKind::Path);
  CHECK(clustered.reduced_to_original[static_cast<size_t>(clustered.reduced.start())] ==
        syn.instance.start());
}

TEST_CASE("reduced distances match the original line positions") {
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(25, 2, 13u);
  const wtsp::ClusteredInstance clustered =
      build_clustered_instance(syn.instance, syn.items, 4, 13u);
  const wtsp::WTspInstance& red = clustered.reduced;
  for (wtsp::NodeId a = 0; a < red.n(); ++a) {
    for (wtsp::NodeId b = 0; b < red.n(); ++b) {
      const double orig =
          std::abs(syn.instance.coordinate(clustered.reduced_to_original[static_cast<size_t>(a)]) -
                   syn.instance.coordinate(clustered.reduced_to_original[static_cast<size_t>(b)]));
      CHECK(red.distance(a, b) == doctest::Approx(orig).epsilon(1e-12));
    }
  }
}

TEST_CASE("items massed on one node collapse to a two node instance") {
  wtsp::WTspInstance inst = wtsp::WTspInstance::path(
      {1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 9.0, 0.0}, 0,
      wtsp::CostFunction::constant(1.0));
  std::vector<wtsp::ClusterItem> items;
  for (int i = 0; i < 4; ++i) {
    items.push_back({i, 3, 2.25, 1.0});
  }
  const wtsp::ClusteredInstance clustered = build_clustered_instance(inst, items, 4, 1u);
  CHECK(clustered.reduced.n() == 2);
  CHECK(clustered.mapping.clusters.size() == 1);
  CHECK(clustered.mapping.clusters[0].representative == 3);
  CHECK(clustered.reduced.weight(1) == doctest::Approx(9.0));
}

TEST_CASE("cluster count larger than the item count is capped") {
  wtsp::WTspInstance inst = wtsp::WTspInstance::path(
      {2.0, 2.0, 2.0}, {0.0, 1.0, 1.0, 1.0}, 0, wtsp::CostFunction::constant(1.0));
  std::vector<wtsp::ClusterItem> items = {
      {0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {2, 3, 1.0, 1.0}};
  const wtsp::ClusteredInstance clustered = build_clustered_instance(inst, items, 50, 2u);
  CHECK(clustered.reduced.n() <= 4);
  CHECK(clustered.mapping.clusters.size() <= 3);
}

TEST_CASE("clustering rejects bad inputs") {
  std::mt19937 rng(41);
  const wtsp::WTspInstance general = testgen::random_euclidean_instance(rng, 5);
  std::vector<wtsp::ClusterItem> items = {{0, 1, 1.0, 1.0}};
  CHECK_THROWS_AS(build_clustered_instance(general, items, 1, 1u),
                  std::invalid_argument);

  wtsp::WTspInstance line = wtsp::WTspInstance::path(
      {1.0, 1.0}, {0.0, 1.0, 1.0}, 0, wtsp::CostFunction::constant(1.0));
  std::vector<wtsp::ClusterItem> bad = {{0, 7, 1.0, 1.0}};
  CHECK_THROWS_AS(build_clustered_instance(line, bad, 1, 1u), std::invalid_argument);
}

TEST_CASE("no items leaves only the start node in the reduced instance") {
  wtsp::WTspInstance line = wtsp::WTspInstance::path(
      {1.0, 1.0}, {0.0, 1.0, 1.0}, 1, wtsp::CostFunction::constant(1.0));
  const wtsp::ClusteredInstance clustered = build_clustered_instance(line, {}, 3, 1u);
  CHECK(clustered.reduced.n() == 1);
  CHECK(clustered.mapping.clusters.empty());
  CHECK(clustered.reduced_to_original == std::vector<wtsp::NodeId>{1});
}

TEST_CASE("expanding singleton clusters reproduces the reduced tour") {
  wtsp::WTspInstance inst = wtsp::WTspInstance::path(
      {3.0, 1.0, 4.0, 2.0}, {0.0, 2.0, 5.0, 1.0, 3.0}, 0,
      wtsp::CostFunction::step({4.0}, {1.0}, 2.0));
  std::vector<wtsp::ClusterItem> items = {
      {0, 1, 2.0, 1.0}, {1, 2, 5.0, 1.0}, {2, 3, 1.0, 1.0}, {3, 4, 3.0, 1.0}};
  const wtsp::ClusteredInstance clustered = build_clustered_instance(inst, items, 4, 2u);
  REQUIRE(clustered.reduced.n() == 5);
  const wtsp::PathDpResult reduced = solve_path_fixed_start(clustered.reduced);
  const wtsp::Tour full = expand_tour(reduced.tour, clustered, inst);
  REQUIRE(full.order.size() == reduced.tour.order.size());
  for (size_t i = 0; i < full.order.size(); ++i) {
    CHECK(full.order[i] ==
          clustered.reduced_to_original[static_cast<size_t>(reduced.tour.order[i])]);
  }
  CHECK(wtsp::tour_cost(inst, full) == doctest::Approx(reduced.cost));
}

TEST_CASE("expanded tours visit every original node once") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const wtsp::SyntheticInstance syn = wtsp::make_line_instance(35, 2, 100u + seed);
    const wtsp::ClusteredInstance clustered =
        build_clustered_instance(syn.instance, syn.items, 0, seed);
    const wtsp::PathDpResult reduced = solve_path_fixed_start(clustered.reduced);
    const wtsp::Tour full = expand_tour(reduced.tour, clustered, syn.instance);
    CHECK(wtsp::tour_is_valid(syn.instance, full));
  }
}

TEST_CASE("expansion rejects a tour that does not fit the reduced instance") {
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(12, 2, 17u);
  const wtsp::ClusteredInstance clustered =
      build_clustered_instance(syn.instance, syn.items, 3, 17u);
  wtsp::Tour bogus;
  bogus.order = {0};
  CHECK_THROWS_AS(expand_tour(bogus, clustered, syn.instance), std::invalid_argument);
}

TEST_CASE("pipeline cost is real and never beats the exact interval solver") {
  for (unsigned seed = 0; seed < 6; ++seed) {
    const wtsp::SyntheticInstance syn = wtsp::make_line_instance(60, 3, 200u + seed);
    const wtsp::ClusteredSolveResult res =
        clustered_solve(syn.instance, syn.items, 0, seed);
    CHECK(wtsp::tour_is_valid(syn.instance, res.tour));
    CHECK(res.cost == doctest::Approx(wtsp::tour_cost(syn.instance, res.tour)));
    const wtsp::PathDpResult exact = solve_path_fixed_start(syn.instance);
    CHECK(res.cost >= exact.cost - 1e-9);
    CHECK(res.cluster_seconds >= 0.0);
    CHECK(res.dp_seconds >= 0.0);
    CHECK(res.expand_seconds >= 0.0);
  }
}

TEST_CASE("the clustered pipeline is deterministic for a fixed seed") {
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(50, 3, 77u);
  const wtsp::ClusteredSolveResult a = clustered_solve(syn.instance, syn.items, 0, 5u);
  const wtsp::ClusteredSolveResult b = clustered_solve(syn.instance, syn.items, 0, 5u);
  CHECK(a.tour.order == b.tour.order);
  CHECK(a.cost == b.cost);
  CHECK(a.reduced_cost == b.reduced_cost);
}

TEST_CASE("cluster mappings serialize with their items partitioned") {
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(20, 2, 8u);
  const wtsp::ClusteredInstance clustered =
      build_clustered_instance(syn.instance, syn.items, 4, 8u);
  const nlohmann::json j = cluster_mapping_to_json(clustered.mapping);
  REQUIRE(j.contains("clusters"));
  REQUIRE(j.contains("items"));
  CHECK(j["items"].size() == syn.items.size());
  std::set<int> ids;
  size_t listed = 0;
  for (const auto& cluster : j["clusters"]) {
    REQUIRE(cluster.contains("representative"));
    REQUIRE(cluster.contains("member_ids"));
    for (const auto& id : cluster["member_ids"]) {
      ids.insert(id.get<int>());
      ++listed;
    }
  }
  CHECK(listed == syn.items.size());
  CHECK(ids.size() == syn.items.size());
  for (const auto& item : j["items"]) {
    CHECK(item.contains("node"));
    CHECK(item.contains("weight"));
    CHECK(item.contains("profit"));
  }
}

TEST_CASE("synthetic line instances have the documented shape") {
  const int n = 15;
  const int per_city = 4;
  const wtsp::SyntheticInstance syn = wtsp::make_line_instance(n, per_city, 55u);
  const wtsp::WTspInstance& inst = syn.instance;
  CHECK(inst.n() == n);
  CHECK(inst.metric_kind() == wtsp::MetricKind::Path);
  CHECK(inst.start() == 0);
  CHECK(inst.coordinate(0) == 0.0);
  CHECK(inst.weight(0) == 0.0);
  CHECK(inst.f().kind() == wtsp::CostFunction::Kind::LinearSpeed);
  REQUIRE(syn.items.size() == static_cast<size_t>((n - 1) * per_city));
  std::vector<double> node_sums(static_cast<size_t>(n), 0.0);
  for (size_t i = 0; i < syn.items.size(); ++i) {
    const wtsp::ClusterItem& item = syn.items[i];
    CHECK(item.id == static_cast<int>(i));
    CHECK(item.node >= 1);
    CHECK(item.node < n);
    CHECK(item.weight >= 1.0);
    CHECK(item.weight <= 100.0);
    CHECK(item.profit >= 1.0);
    CHECK(item.profit <= 100.0);
    node_sums[static_cast<size_t>(item.node)] += item.weight;
  }
  for (wtsp::NodeId v = 0; v < n; ++v) {
    CHECK(inst.weight(v) == doctest::Approx(node_sums[static_cast<size_t>(v)]));
  }
}

TEST_CASE("synthetic generation is reproducible and validated") {
  const wtsp::SyntheticInstance a = wtsp::make_line_instance(12, 3, 4u);
  const wtsp::SyntheticInstance b = wtsp::make_line_instance(12, 3, 4u);
  REQUIRE(a.items.size() == b.items.size());
  for (size_t i = 0; i < a.items.size(); ++i) {
    CHECK(a.items[i].node == b.items[i].node);
    CHECK(a.items[i].weight == b.items[i].weight);
    CHECK(a.items[i].profit == b.items[i].profit);
  }
  for (wtsp::NodeId v = 0; v < 12; ++v) {
    CHECK(a.instance.coordinate(v) == b.instance.coordinate(v));
    CHECK(a.instance.weight(v) == b.instance.weight(v));
  }
  const wtsp::SyntheticInstance depot_only = wtsp::make_line_instance(1, 5, 2u);
  CHECK(depot_only.instance.n() == 1);
  CHECK(depot_only.items.empty());
  CHECK_THROWS_AS(wtsp::make_line_instance(0, 1, 1u), std::invalid_argument);
  CHECK_THROWS_AS(wtsp::make_line_instance(5, -1, 1u), std::invalid_argument);
}
