#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtsp/instance.hpp"

namespace wtsp {

struct TtpItem {
  double profit = 0.0;
  double weight = 0.0;
  int city = 0;  // 0-based
};

// Travelling-thief benchmark instance. Cities and items are stored 0-based;
// the files use 1-based numbering. City 0 is the start and holds no items.
struct TtpInstance {
  std::string name;
  std::vector<std::array<double, 2>> coords;
  std::vector<TtpItem> items;
  double capacity = 0.0;
  double min_speed = 0.0;
  double max_speed = 1.0;
  double renting_ratio = 0.0;
  std::string edge_weight_type = "CEIL_2D";
  std::string knapsack_data_type;  // optional, copied through verbatim
};

class TtpParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TtpInstance parse_ttp(const std::string& text);
std::string write_ttp(const TtpInstance& ttp);

// City-to-city distance under the instance's rounding convention
// (CEIL_2D or EUC_2D).
double ttp_distance(const TtpInstance& ttp, int a, int b);

// Cities flattened onto the x-axis: position -> city, sorted by x with the
// file order kept on ties, and the exact coordinate differences as gaps.
struct PathProjection {
  std::vector<int> order;
  std::vector<int> position;  // city -> position
  std::vector<double> gaps;
};

PathProjection project_to_path(const TtpInstance& ttp);

struct PackingPlan {
  std::vector<int> selected;  // 0-based item indices, ascending
};

enum class DistanceMode { PathProjected, General };

// Freezes a packing plan into a solvable instance: node weights are the
// selected item weights per city, speed drops linearly from max to min
// speed as the selected total is accumulated, start is city 0. Projected
// mode keeps exact collinear distances; general mode applies the file's
// rounding convention.
WTspInstance fix_packing(const TtpInstance& ttp, const PackingPlan& plan,
                         DistanceMode mode);

// Items scored by profit / (weight * remaining tour distance from their
// city) and taken greedily while capacity lasts. The tour is over cities,
// starting at city 0.
PackingPlan greedy_packing(const TtpInstance& ttp, const Tour& tour);

// Local search baseline: seeded shuffle of everything after the start,
// then best-improvement segment reversals judged by weighted tour cost,
// until no move helps or max_moves reversals were accepted.
Tour two_opt_baseline(const WTspInstance& instance, unsigned seed,
                      int max_moves);

// Tour and packing-plan files. Tours are one node index per line; plans are
// either one item index per line or a JSON object {"selected": [...]}.
// index_base converts between internal 0-based ids and the file numbering.
std::string write_tour_file(const Tour& tour, int index_base);
Tour parse_tour_file(const std::string& text, int index_base);
std::string write_packing_plan(const PackingPlan& plan, int index_base);
PackingPlan parse_packing_plan(const std::string& text, int index_base);

}  // namespace wtsp
