#include "wtsp/json_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wtsp {

using nlohmann::json;

namespace {

json rate_to_json(double r) {
  if (std::isinf(r)) return json("inf");
  return json(r);
}

double rate_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInfiniteRate;
    throw std::invalid_argument("unknown rate literal: " + j.get<std::string>());
  }
  return j.get<double>();
}

}  // namespace

json cost_function_to_json(const CostFunction& f) {
  json j;
  switch (f.kind()) {
    case CostFunction::Kind::Constant:
      j["kind"] = "constant";
      j["rate"] = f.rate();
      break;
    case CostFunction::Kind::Step: {
      j["kind"] = "step";
      j["thresholds"] = f.thresholds();
      json rates = json::array();
      for (double r : f.rates()) rates.push_back(rate_to_json(r));
      j["rates"] = std::move(rates);
      j["beyond_rate"] = rate_to_json(f.beyond_rate());
      break;
    }
    case CostFunction::Kind::LinearSpeed:
      j["kind"] = "linear_speed";
      j["nu_max"] = f.nu_max();
      j["nu_min"] = f.nu_min();
      j["w_ref"] = f.w_ref();
      break;
  }
  return j;
}

CostFunction cost_function_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    return CostFunction::constant(j.at("rate").get<double>());
  }
  if (kind == "step") {
    std::vector<double> rates;
    for (const auto& r : j.at("rates")) rates.push_back(rate_from_json(r));
    return CostFunction::step(j.at("thresholds").get<std::vector<double>>(),
                              std::move(rates), rate_from_json(j.at("beyond_rate")));
  }
  if (kind == "linear_speed") {
    return CostFunction::linear_speed(j.at("nu_max").get<double>(),
                                      j.at("nu_min").get<double>(),
                                      j.at("w_ref").get<double>());
  }
  throw std::invalid_argument("unknown cost_function kind: " + kind);
}

json instance_to_json(const WTspInstance& inst) {
  json j;
  j["nodes"] = inst.n();
  j["weights"] = inst.weights();
  j["start"] = inst.start();
  j["cost_function"] = cost_function_to_json(inst.f());
  switch (inst.metric_kind()) {
    case MetricKind::Path:
      j["path_gaps"] = inst.path_gaps();
      j["path_order"] = inst.path_order();
      break;
    case MetricKind::Star:
      j["star_leaf_distances"] = inst.star_leaf_distances();
      j["star_center"] = inst.star_center();
      break;
    case MetricKind::General: {
      json rows = json::array();
      for (int i = 0; i < inst.n(); ++i) {
        json row = json::array();
        for (int k = 0; k < inst.n(); ++k) row.push_back(inst.distance(i, k));
        rows.push_back(std::move(row));
      }
      j["distances"] = std::move(rows);
      break;
    }
  }
  return j;
}

WTspInstance instance_from_json(const json& j) {
  const int n = j.at("nodes").get<int>();
  auto weights = j.at("weights").get<std::vector<double>>();
  if (static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("instance JSON: weights length != nodes");
  }
  const NodeId start = j.at("start").get<NodeId>();
  CostFunction f = cost_function_from_json(j.at("cost_function"));
  if (j.contains("path_gaps")) {
    std::vector<NodeId> order;
    if (j.contains("path_order")) order = j.at("path_order").get<std::vector<NodeId>>();
    return WTspInstance::path(j.at("path_gaps").get<std::vector<double>>(),
                              std::move(weights), start, std::move(f), std::move(order));
  }
  if (j.contains("star_leaf_distances")) {
    const NodeId center = j.value("star_center", 0);
    return WTspInstance::star(center,
                              j.at("star_leaf_distances").get<std::vector<double>>(),
                              std::move(weights), start, std::move(f));
  }
  if (j.contains("distances")) {
    return WTspInstance::general(j.at("distances").get<std::vector<std::vector<double>>>(),
                                 std::move(weights), start, std::move(f));
  }
  throw std::invalid_argument(
      "instance JSON: need one of distances, path_gaps, star_leaf_distances");
}

void save_instance(const WTspInstance& inst, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file);
  out << instance_to_json(inst).dump(2) << "\n";
}

WTspInstance load_instance(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file);
  json j;
  in >> j;
  return instance_from_json(j);
}

json cluster_mapping_to_json(const ClusterMapping& mapping) {
  json clusters = json::array();
  for (const ClusterInfo& info : mapping.clusters) {
    clusters.push_back({{"representative", info.representative},
                        {"member_ids", info.member_ids},
                        {"total_weight", info.total_weight},
                        {"total_profit", info.total_profit}});
  }
  json items = json::array();
  for (const ClusterItem& item : mapping.items) {
    items.push_back({{"id", item.id},
                     {"node", item.node},
                     {"weight", item.weight},
                     {"profit", item.profit}});
  }
  return json{{"clusters", std::move(clusters)}, {"items", std::move(items)}};
}

}  // namespace wtsp
