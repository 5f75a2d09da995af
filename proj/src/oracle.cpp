#include "wtsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wtsp {

namespace {

struct BruteContext {
  const WTspInstance* inst;
  NodeId start;
  double hat_total;  // total weight minus the start node's weight
  std::vector<NodeId> current;
  std::vector<bool> used;
  double best_cost;
  std::vector<NodeId> best_order;
};

void brute_dfs(BruteContext& ctx, int depth, NodeId last, double carried,
               double partial) {
  const WTspInstance& inst = *ctx.inst;
  const int n = inst.n();
  if (partial >= ctx.best_cost) return;
  if (depth == n) {
    const double total =
        partial + edge_cost(inst.f()(carried), inst.distance(last, ctx.start));
    if (total < ctx.best_cost) {
      ctx.best_cost = total;
      ctx.best_order = ctx.current;
    }
    return;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (ctx.used[static_cast<size_t>(v)]) continue;
    ctx.used[static_cast<size_t>(v)] = true;
    ctx.current.push_back(v);
    const double step = edge_cost(inst.f()(carried), inst.distance(last, v));
    brute_dfs(ctx, depth + 1, v, carried + inst.weight(v), partial + step);
    ctx.current.pop_back();
    ctx.used[static_cast<size_t>(v)] = false;
  }
}

// Lexicographically first tour from a given start: remaining nodes ascending.
Tour lex_first_tour(const WTspInstance& inst, NodeId start) {
  Tour t;
  t.order.push_back(start);
  for (NodeId v = 0; v < inst.n(); ++v) {
    if (v != start) t.order.push_back(v);
  }
  return t;
}

void brute_from(const WTspInstance& inst, NodeId start, BruteContext& ctx) {
  ctx.inst = &inst;
  ctx.start = start;
  ctx.used.assign(static_cast<size_t>(inst.n()), false);
  ctx.used[static_cast<size_t>(start)] = true;
  ctx.current.clear();
  ctx.current.push_back(start);
  brute_dfs(ctx, 1, start, 0.0, 0.0);
}

}  // namespace

BruteForceResult brute_force_wtsp(const WTspInstance& inst, bool free_start) {
  if (inst.n() > 12) {
    throw std::invalid_argument("brute force is limited to n <= 12");
  }
  BruteContext ctx;
  // Seed with the lexicographically first tour so an all-infinite instance
  // still yields a deterministic witness.
  Tour seed = lex_first_tour(inst, free_start ? 0 : inst.start());
  ctx.best_order = seed.order;
  ctx.best_cost = tour_cost(inst, seed);
  if (free_start) {
    for (NodeId t = 0; t < inst.n(); ++t) brute_from(inst, t, ctx);
  } else {
    brute_from(inst, inst.start(), ctx);
  }
  BruteForceResult res;
  res.tour.order = ctx.best_order;
  res.cost = ctx.best_cost;
  res.start = ctx.best_order.front();
  return res;
}

namespace {

bool sizes_are_integral(const std::vector<KnapsackItem>& items) {
  for (const auto& it : items) {
    if (std::floor(it.size) != it.size) return false;
  }
  return true;
}

void check_items(const std::vector<KnapsackItem>& items, double budget) {
  if (budget < 0.0) throw std::invalid_argument("knapsack budget must be >= 0");
  for (const auto& it : items) {
    if (!(it.size >= 0.0) || !(it.value >= 0.0)) {
      throw std::invalid_argument("knapsack items need size >= 0 and value >= 0");
    }
  }
}

KnapsackResult make_result(const std::vector<KnapsackItem>& items,
                           std::vector<int> picked_indices) {
  KnapsackResult res;
  for (int idx : picked_indices) {
    const auto& it = items[static_cast<size_t>(idx)];
    res.ids.push_back(it.id);
    res.total_size += it.size;
    res.total_value += it.value;
  }
  std::sort(res.ids.begin(), res.ids.end());
  return res;
}

// Pseudo-polynomial route: suffix table best[i][c] = max value from items
// i.. with capacity c, then a forward walk that stops as soon as no value
// is left and otherwise takes an item whenever doing so still reaches the
// optimum. This reproduces the lexicographically-smallest-id tie-break.
KnapsackResult knapsack_dp(const std::vector<KnapsackItem>& items,
                           double budget) {
  const int n = static_cast<int>(items.size());
  const long long cap = static_cast<long long>(std::floor(budget));
  const size_t width = static_cast<size_t>(cap) + 1;
  std::vector<double> best(static_cast<size_t>(n + 1) * width, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    const double* next = &best[static_cast<size_t>(i + 1) * width];
    double* row = &best[static_cast<size_t>(i) * width];
    const long long s = static_cast<long long>(items[static_cast<size_t>(i)].size);
    const double v = items[static_cast<size_t>(i)].value;
    for (long long c = 0; c <= cap; ++c) {
      double val = next[c];
      if (s <= c) val = std::max(val, v + next[c - s]);
      row[static_cast<size_t>(c)] = val;
    }
  }
  std::vector<int> picked;
  long long c = cap;
  for (int i = 0; i < n; ++i) {
    const double* row = &best[static_cast<size_t>(i) * width];
    const double* next = &best[static_cast<size_t>(i + 1) * width];
    if (row[c] == 0.0) break;
    const long long s = static_cast<long long>(items[static_cast<size_t>(i)].size);
    const double v = items[static_cast<size_t>(i)].value;
    if (s <= c && v + next[c - s] == row[c] && v > 0.0) {
      picked.push_back(i);
      c -= s;
    }
  }
  return make_result(items, std::move(picked));
}

struct EnumContext {
  const std::vector<KnapsackItem>* items;
  double budget;
  double best_value;
  std::vector<double> suffix_value;  // suffix_value[i] = sum of values from i
};

void enum_best(EnumContext& ctx, int i, double size, double value) {
  ctx.best_value = std::max(ctx.best_value, value);
  const auto& items = *ctx.items;
  for (int k = i; k < static_cast<int>(items.size()); ++k) {
    const auto& it = items[static_cast<size_t>(k)];
    if (size + it.size > ctx.budget) continue;
    if (value + ctx.suffix_value[static_cast<size_t>(k)] <= ctx.best_value) break;
    enum_best(ctx, k + 1, size + it.size, value + it.value);
  }
}

// Emits subsets in lexicographic order of their sorted id sequences and
// keeps the first one matching the optimal value.
bool enum_reconstruct(EnumContext& ctx, int i, double size, double value,
                      std::vector<int>& chosen) {
  if (value == ctx.best_value) return true;
  const auto& items = *ctx.items;
  for (int k = i; k < static_cast<int>(items.size()); ++k) {
    const auto& it = items[static_cast<size_t>(k)];
    if (size + it.size > ctx.budget) continue;
    if (value + ctx.suffix_value[static_cast<size_t>(k)] < ctx.best_value) break;
    chosen.push_back(k);
    if (enum_reconstruct(ctx, k + 1, size + it.size, value + it.value, chosen)) {
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

KnapsackResult knapsack_enumerate(const std::vector<KnapsackItem>& items,
                                  double budget) {
  EnumContext ctx;
  ctx.items = &items;
  ctx.budget = budget;
  ctx.best_value = 0.0;
  const int n = static_cast<int>(items.size());
  ctx.suffix_value.assign(static_cast<size_t>(n) + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    ctx.suffix_value[static_cast<size_t>(i)] =
        ctx.suffix_value[static_cast<size_t>(i) + 1] + items[static_cast<size_t>(i)].value;
  }
  enum_best(ctx, 0, 0.0, 0.0);
  std::vector<int> chosen;
  enum_reconstruct(ctx, 0, 0.0, 0.0, chosen);
  return make_result(items, std::move(chosen));
}

}  // namespace

KnapsackResult knapsack_exact(const std::vector<KnapsackItem>& items,
                              double budget) {
  check_items(items, budget);
  if (items.empty()) return {};
  const int n = static_cast<int>(items.size());
  if (sizes_are_integral(items)) {
    const long long cap = static_cast<long long>(std::floor(budget));
    if (static_cast<long long>(n + 1) * (cap + 1) <= 16'000'000) {
      return knapsack_dp(items, budget);
    }
  }
  if (n > 25) {
    throw std::invalid_argument(
        "exact knapsack needs integral sizes or at most 25 items");
  }
  return knapsack_enumerate(items, budget);
}

KnapsackResult knapsack_fptas(const std::vector<KnapsackItem>& items,
                              double budget, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("fptas eps must lie in (0, 1)");
  }
  check_items(items, budget);
  std::vector<int> feasible;
  double v_max = 0.0;
  for (int i = 0; i < static_cast<int>(items.size()); ++i) {
    if (items[static_cast<size_t>(i)].size <= budget) {
      feasible.push_back(i);
      v_max = std::max(v_max, items[static_cast<size_t>(i)].value);
    }
  }
  if (feasible.empty() || v_max == 0.0) return {};
  const int m = static_cast<int>(feasible.size());
  const double scale = eps * v_max / static_cast<double>(m);
  std::vector<long long> scaled(static_cast<size_t>(m));
  long long total_scaled = 0;
  for (int i = 0; i < m; ++i) {
    scaled[static_cast<size_t>(i)] = static_cast<long long>(
        std::floor(items[static_cast<size_t>(feasible[static_cast<size_t>(i)])].value / scale));
    total_scaled += scaled[static_cast<size_t>(i)];
  }
  // min_size[p] = least total size reaching scaled value exactly p.
  const double kUnreachable = std::numeric_limits<double>::infinity();
  std::vector<double> min_size(static_cast<size_t>(total_scaled) + 1, kUnreachable);
  min_size[0] = 0.0;
  std::vector<std::vector<char>> take(
      static_cast<size_t>(m), std::vector<char>(static_cast<size_t>(total_scaled) + 1, 0));
  for (int i = 0; i < m; ++i) {
    const long long sv = scaled[static_cast<size_t>(i)];
    const double sz = items[static_cast<size_t>(feasible[static_cast<size_t>(i)])].size;
    for (long long p = total_scaled; p >= sv; --p) {
      const double cand = min_size[static_cast<size_t>(p - sv)] + sz;
      if (cand < min_size[static_cast<size_t>(p)]) {
        min_size[static_cast<size_t>(p)] = cand;
        take[static_cast<size_t>(i)][static_cast<size_t>(p)] = 1;
      }
    }
  }
  long long best_p = 0;
  for (long long p = total_scaled; p > 0; --p) {
    if (min_size[static_cast<size_t>(p)] <= budget) {
      best_p = p;
      break;
    }
  }
  std::vector<int> picked;
  long long p = best_p;
  for (int i = m - 1; i >= 0 && p > 0; --i) {
    if (take[static_cast<size_t>(i)][static_cast<size_t>(p)]) {
      picked.push_back(feasible[static_cast<size_t>(i)]);
      p -= scaled[static_cast<size_t>(i)];
    }
  }
  std::reverse(picked.begin(), picked.end());
  return make_result(items, std::move(picked));
}

bool partition_oracle(const std::vector<std::int64_t>& s) {
  std::int64_t sum = 0;
  for (std::int64_t x : s) {
    if (x <= 0) throw std::invalid_argument("partition entries must be positive");
    sum += x;
  }
  if (s.empty() || sum % 2 != 0) return false;
  const std::int64_t target = sum / 2;
  if (target > 50'000'000) {
    throw std::invalid_argument("partition sum too large for subset-sum table");
  }
  std::vector<char> reach(static_cast<size_t>(target) + 1, 0);
  reach[0] = 1;
  for (std::int64_t x : s) {
    for (std::int64_t c = target; c >= x; --c) {
      if (reach[static_cast<size_t>(c - x)]) reach[static_cast<size_t>(c)] = 1;
    }
  }
  return reach[static_cast<size_t>(target)] != 0;
}

}  // namespace wtsp
