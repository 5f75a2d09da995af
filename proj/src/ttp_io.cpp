#include "wtsp/ttp_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wtsp {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw TtpParseError("line " + std::to_string(line_no) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

// "KEY ...: value" -> value (section headers carry parenthesized column
// descriptions before the colon).
std::string value_after_colon(const std::string& line, int line_no) {
  const auto pos = line.find(':');
  if (pos == std::string::npos) fail(line_no, "expected ':' in header line");
  return trim(line.substr(pos + 1));
}

double parse_number(const std::string& token, int line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) fail(line_no, "malformed number '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line_no, "malformed number '" + token + "'");
  }
}

std::string format_number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

TtpInstance parse_ttp(const std::string& text) {
  TtpInstance ttp;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  long long dimension = -1;
  long long item_count = -1;
  bool saw_name = false, saw_capacity = false, saw_min = false, saw_max = false,
       saw_ratio = false, saw_type = false;

  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      out = trim(out);
      if (!out.empty()) return true;
    }
    return false;
  };

  bool in_items = false;
  bool coords_done = false;
  while (next_line(line)) {
    if (starts_with(line, "PROBLEM NAME")) {
      ttp.name = value_after_colon(line, line_no);
      saw_name = true;
    } else if (starts_with(line, "KNAPSACK DATA TYPE")) {
      ttp.knapsack_data_type = value_after_colon(line, line_no);
    } else if (starts_with(line, "DIMENSION")) {
      dimension = static_cast<long long>(parse_number(value_after_colon(line, line_no), line_no));
      if (dimension < 1) fail(line_no, "DIMENSION must be at least 1");
    } else if (starts_with(line, "NUMBER OF ITEMS")) {
      item_count = static_cast<long long>(parse_number(value_after_colon(line, line_no), line_no));
      if (item_count < 0) fail(line_no, "NUMBER OF ITEMS must be nonnegative");
    } else if (starts_with(line, "CAPACITY OF KNAPSACK")) {
      ttp.capacity = parse_number(value_after_colon(line, line_no), line_no);
      saw_capacity = true;
    } else if (starts_with(line, "MIN SPEED")) {
      ttp.min_speed = parse_number(value_after_colon(line, line_no), line_no);
      saw_min = true;
    } else if (starts_with(line, "MAX SPEED")) {
      ttp.max_speed = parse_number(value_after_colon(line, line_no), line_no);
      saw_max = true;
    } else if (starts_with(line, "RENTING RATIO")) {
      ttp.renting_ratio = parse_number(value_after_colon(line, line_no), line_no);
      saw_ratio = true;
    } else if (starts_with(line, "EDGE_WEIGHT_TYPE")) {
      ttp.edge_weight_type = value_after_colon(line, line_no);
      saw_type = true;
    } else if (starts_with(line, "NODE_COORD_SECTION")) {
      if (dimension < 0) fail(line_no, "NODE_COORD_SECTION before DIMENSION");
      for (long long i = 1; i <= dimension; ++i) {
        if (!next_line(line)) fail(line_no, "expected " + std::to_string(dimension) + " coordinate rows");
        std::istringstream row(line);
        std::string a, b, c, extra;
        if (!(row >> a >> b >> c) || (row >> extra)) {
          fail(line_no, "expected 'index x y'");
        }
        if (static_cast<long long>(parse_number(a, line_no)) != i) {
          fail(line_no, "coordinate rows must be numbered consecutively from 1");
        }
        ttp.coords.push_back({parse_number(b, line_no), parse_number(c, line_no)});
      }
      coords_done = true;
    } else if (starts_with(line, "ITEMS SECTION")) {
      if (!coords_done) fail(line_no, "ITEMS SECTION before NODE_COORD_SECTION");
      if (item_count < 0) fail(line_no, "ITEMS SECTION before NUMBER OF ITEMS");
      for (long long i = 1; i <= item_count; ++i) {
        if (!next_line(line)) fail(line_no, "expected " + std::to_string(item_count) + " item rows");
        std::istringstream row(line);
        std::string a, b, c, d, extra;
        if (!(row >> a >> b >> c >> d) || (row >> extra)) {
          fail(line_no, "expected 'index profit weight city'");
        }
        if (static_cast<long long>(parse_number(a, line_no)) != i) {
          fail(line_no, "item rows must be numbered consecutively from 1");
        }
        TtpItem item;
        item.profit = parse_number(b, line_no);
        item.weight = parse_number(c, line_no);
        const long long city = static_cast<long long>(parse_number(d, line_no));
        if (city < 1 || city > dimension) fail(line_no, "item city out of range");
        if (city == 1) fail(line_no, "the start city cannot hold items");
        if (item.profit < 0.0 || item.weight < 0.0) {
          fail(line_no, "item profit and weight must be nonnegative");
        }
        item.city = static_cast<int>(city - 1);
        ttp.items.push_back(item);
      }
      in_items = true;
    } else {
      fail(line_no, "unrecognized line '" + line + "'");
    }
  }
  if (!saw_name) throw TtpParseError("missing PROBLEM NAME header");
  if (dimension < 0) throw TtpParseError("missing DIMENSION header");
  if (item_count < 0) throw TtpParseError("missing NUMBER OF ITEMS header");
  if (!saw_capacity) throw TtpParseError("missing CAPACITY OF KNAPSACK header");
  if (!saw_min || !saw_max) throw TtpParseError("missing MIN SPEED or MAX SPEED header");
  if (!saw_ratio) throw TtpParseError("missing RENTING RATIO header");
  if (!saw_type) throw TtpParseError("missing EDGE_WEIGHT_TYPE header");
  if (!coords_done) throw TtpParseError("missing NODE_COORD_SECTION");
  if (!in_items && item_count > 0) throw TtpParseError("missing ITEMS SECTION");
  if (ttp.max_speed <= 0.0 || ttp.min_speed < 0.0 || ttp.min_speed > ttp.max_speed) {
    throw TtpParseError("speeds must satisfy 0 <= MIN SPEED <= MAX SPEED, MAX SPEED > 0");
  }
  return ttp;
}

std::string write_ttp(const TtpInstance& ttp) {
  std::ostringstream out;
  out << "PROBLEM NAME: " << ttp.name << "\n";
  if (!ttp.knapsack_data_type.empty()) {
    out << "KNAPSACK DATA TYPE: " << ttp.knapsack_data_type << "\n";
  }
  out << "DIMENSION: " << ttp.coords.size() << "\n";
  out << "NUMBER OF ITEMS: " << ttp.items.size() << "\n";
  out << "CAPACITY OF KNAPSACK: " << format_number(ttp.capacity) << "\n";
  out << "MIN SPEED: " << format_number(ttp.min_speed) << "\n";
  out << "MAX SPEED: " << format_number(ttp.max_speed) << "\n";
  out << "RENTING RATIO: " << format_number(ttp.renting_ratio) << "\n";
  out << "EDGE_WEIGHT_TYPE: " << ttp.edge_weight_type << "\n";
  out << "NODE_COORD_SECTION (INDEX, X, Y):\n";
  for (size_t i = 0; i < ttp.coords.size(); ++i) {
    out << (i + 1) << " " << format_number(ttp.coords[i][0]) << " "
        << format_number(ttp.coords[i][1]) << "\n";
  }
  out << "ITEMS SECTION (INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):\n";
  for (size_t i = 0; i < ttp.items.size(); ++i) {
    out << (i + 1) << " " << format_number(ttp.items[i].profit) << " "
        << format_number(ttp.items[i].weight) << " " << (ttp.items[i].city + 1)
        << "\n";
  }
  return out.str();
}

double ttp_distance(const TtpInstance& ttp, int a, int b) {
  const double dx = ttp.coords[static_cast<size_t>(a)][0] - ttp.coords[static_cast<size_t>(b)][0];
  const double dy = ttp.coords[static_cast<size_t>(a)][1] - ttp.coords[static_cast<size_t>(b)][1];
  const double d = std::sqrt(dx * dx + dy * dy);
  if (ttp.edge_weight_type == "CEIL_2D") return std::ceil(d);
  if (ttp.edge_weight_type == "EUC_2D") return std::floor(d + 0.5);
  throw std::invalid_argument("unsupported EDGE_WEIGHT_TYPE " + ttp.edge_weight_type);
}

PathProjection project_to_path(const TtpInstance& ttp) {
  const int n = static_cast<int>(ttp.coords.size());
  PathProjection proj;
  proj.order.resize(static_cast<size_t>(n));
  std::iota(proj.order.begin(), proj.order.end(), 0);
  std::stable_sort(proj.order.begin(), proj.order.end(), [&](int a, int b) {
    return ttp.coords[static_cast<size_t>(a)][0] < ttp.coords[static_cast<size_t>(b)][0];
  });
  proj.position.resize(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) {
    proj.position[static_cast<size_t>(proj.order[static_cast<size_t>(p)])] = p;
  }
  proj.gaps.reserve(static_cast<size_t>(n > 0 ? n - 1 : 0));
  for (int p = 0; p + 1 < n; ++p) {
    proj.gaps.push_back(ttp.coords[static_cast<size_t>(proj.order[static_cast<size_t>(p) + 1])][0] -
                        ttp.coords[static_cast<size_t>(proj.order[static_cast<size_t>(p)])][0]);
  }
  return proj;
}

WTspInstance fix_packing(const TtpInstance& ttp, const PackingPlan& plan,
                         DistanceMode mode) {
  const int n = static_cast<int>(ttp.coords.size());
  std::vector<double> weights(static_cast<size_t>(n), 0.0);
  double total = 0.0;
  std::vector<bool> seen(ttp.items.size(), false);
  for (int id : plan.selected) {
    if (id < 0 || id >= static_cast<int>(ttp.items.size())) {
      throw std::invalid_argument("packing plan selects an unknown item");
    }
    if (seen[static_cast<size_t>(id)]) {
      throw std::invalid_argument("packing plan selects an item twice");
    }
    seen[static_cast<size_t>(id)] = true;
    const TtpItem& item = ttp.items[static_cast<size_t>(id)];
    weights[static_cast<size_t>(item.city)] += item.weight;
    total += item.weight;
  }
  if (total > ttp.capacity) {
    throw std::invalid_argument("packing plan exceeds the knapsack capacity");
  }
  CostFunction f = CostFunction::linear_speed(ttp.max_speed, ttp.min_speed, total);
  if (mode == DistanceMode::PathProjected) {
    PathProjection proj = project_to_path(ttp);
    std::vector<NodeId> order(proj.order.begin(), proj.order.end());
    return WTspInstance::path(std::move(proj.gaps), std::move(weights), 0,
                              std::move(f), std::move(order));
  }
  std::vector<std::vector<double>> matrix(
      static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double d = ttp_distance(ttp, a, b);
      matrix[static_cast<size_t>(a)][static_cast<size_t>(b)] = d;
      matrix[static_cast<size_t>(b)][static_cast<size_t>(a)] = d;
    }
  }
  return WTspInstance::general(std::move(matrix), std::move(weights), 0,
                               std::move(f));
}

PackingPlan greedy_packing(const TtpInstance& ttp, const Tour& tour) {
  const int n = static_cast<int>(ttp.coords.size());
  if (static_cast<int>(tour.order.size()) != n) {
    throw std::invalid_argument("tour does not cover every city");
  }
  std::vector<int> slot(static_cast<size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    const NodeId c = tour.order[static_cast<size_t>(p)];
    if (c < 0 || c >= n || slot[static_cast<size_t>(c)] != -1) {
      throw std::invalid_argument("tour is not a permutation of the cities");
    }
    slot[static_cast<size_t>(c)] = p;
  }
  // remaining[p] = distance still to drive when standing at tour slot p
  std::vector<double> remaining(static_cast<size_t>(n) + 1, 0.0);
  for (int p = n - 1; p >= 0; --p) {
    const int a = tour.order[static_cast<size_t>(p)];
    const int b = tour.order[static_cast<size_t>((p + 1) % n)];
    remaining[static_cast<size_t>(p)] =
        remaining[static_cast<size_t>(p) + 1] + ttp_distance(ttp, a, b);
  }
  struct Scored {
    double score;
    int id;
  };
  std::vector<Scored> scored;
  scored.reserve(ttp.items.size());
  for (int i = 0; i < static_cast<int>(ttp.items.size()); ++i) {
    const TtpItem& item = ttp.items[static_cast<size_t>(i)];
    const double rem = remaining[static_cast<size_t>(slot[static_cast<size_t>(item.city)])];
    const double denom = item.weight * rem;
    const double score = denom > 0.0 ? item.profit / denom
                                     : std::numeric_limits<double>::infinity();
    scored.push_back({score, i});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
  PackingPlan plan;
  double total = 0.0;
  for (const Scored& s : scored) {
    const double w = ttp.items[static_cast<size_t>(s.id)].weight;
    if (total + w <= ttp.capacity) {
      total += w;
      plan.selected.push_back(s.id);
    }
  }
  std::sort(plan.selected.begin(), plan.selected.end());
  return plan;
}

Tour two_opt_baseline(const WTspInstance& inst, unsigned seed, int max_moves) {
  const int n = inst.n();
  Tour tour;
  tour.order.reserve(static_cast<size_t>(n));
  tour.order.push_back(inst.start());
  for (NodeId v = 0; v < n; ++v) {
    if (v != inst.start()) tour.order.push_back(v);
  }
  std::mt19937 gen(seed);
  std::shuffle(tour.order.begin() + 1, tour.order.end(), gen);
  if (n < 3) return tour;

  double cost = tour_cost(inst, tour);
  int accepted = 0;
  while (accepted < max_moves) {
    double best_cost = cost;
    int best_i = -1, best_j = -1;
    Tour candidate = tour;
    for (int i = 1; i + 1 < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::reverse(candidate.order.begin() + i, candidate.order.begin() + j + 1);
        const double c = tour_cost(inst, candidate);
        if (c < best_cost) {
          best_cost = c;
          best_i = i;
          best_j = j;
        }
        std::reverse(candidate.order.begin() + i, candidate.order.begin() + j + 1);
      }
    }
    if (best_i < 0) break;
    std::reverse(tour.order.begin() + best_i, tour.order.begin() + best_j + 1);
    cost = best_cost;
    ++accepted;
  }
  return tour;
}

std::string write_tour_file(const Tour& tour, int index_base) {
  std::ostringstream out;
  for (NodeId v : tour.order) out << (v + index_base) << "\n";
  return out.str();
}

Tour parse_tour_file(const std::string& text, int index_base) {
  Tour tour;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      tour.order.push_back(std::stoi(token) - index_base);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed tour entry '" + token + "'");
    }
  }
  return tour;
}

std::string write_packing_plan(const PackingPlan& plan, int index_base) {
  std::ostringstream out;
  for (int id : plan.selected) out << (id + index_base) << "\n";
  return out.str();
}

PackingPlan parse_packing_plan(const std::string& text, int index_base) {
  PackingPlan plan;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& v : j.at("selected")) {
      plan.selected.push_back(v.get<int>() - index_base);
    }
  } else {
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      try {
        plan.selected.push_back(std::stoi(token) - index_base);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed plan entry '" + token + "'");
      }
    }
  }
  std::sort(plan.selected.begin(), plan.selected.end());
  return plan;
}

}  // namespace wtsp
