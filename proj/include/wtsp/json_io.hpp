#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "wtsp/cluster.hpp"
#include "wtsp/instance.hpp"

namespace wtsp {

// Instance JSON schema (round-trips losslessly):
//   {
//     "nodes": n, "weights": [...], "start": s, "cost_function": {...},
//     one of:
//       "distances": [[...], ...]                       (general)
//       "path_gaps": [...], "path_order": [...]         (path)
//       "star_leaf_distances": [...], "star_center": c  (star)
//   }
// cost_function is one of
//   {"kind": "constant", "rate": r}
//   {"kind": "step", "thresholds": [...], "rates": [...], "beyond_rate": r}
//   {"kind": "linear_speed", "nu_max": a, "nu_min": b, "w_ref": w}
// Infinite step rates are encoded as the string "inf".
nlohmann::json instance_to_json(const WTspInstance& instance);
WTspInstance instance_from_json(const nlohmann::json& j);

nlohmann::json cost_function_to_json(const CostFunction& f);
CostFunction cost_function_from_json(const nlohmann::json& j);

void save_instance(const WTspInstance& instance, const std::string& file);
WTspInstance load_instance(const std::string& file);

// Audit record of a clustering run: per cluster the representative node,
// member item ids and aggregated weight and profit, plus every item's true
// node.
nlohmann::json cluster_mapping_to_json(const ClusterMapping& mapping);

}  // namespace wtsp
