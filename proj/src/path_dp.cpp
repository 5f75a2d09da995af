#include "wtsp/path_dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wtsp {

namespace {

void require_path(const WTspInstance& inst) {
  if (inst.metric_kind() != MetricKind::Path) {
    throw std::invalid_argument("path solver needs a path-metric instance");
  }
}

// Unlike tour_is_valid this accepts any first node, so tours from the
// free-start solver can be inspected too.
void require_node_permutation(const WTspInstance& inst, const Tour& tour) {
  const int n = inst.n();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  bool ok = tour.order.size() == static_cast<size_t>(n);
  for (size_t k = 0; ok && k < tour.order.size(); ++k) {
    const NodeId v = tour.order[k];
    ok = v >= 0 && v < n && !seen[static_cast<size_t>(v)];
    if (ok) seen[static_cast<size_t>(v)] = true;
  }
  if (!ok) {
    throw std::invalid_argument("tour is not a permutation of the nodes");
  }
}

}  // namespace

// Entries are grouped by interval length so the fill loop and its reads
// from the length-1 band stay in adjacent memory.
std::size_t PathDpTable::index(int i, int j, Side side) const {
  const std::size_t n = static_cast<std::size_t>(n_);
  const std::size_t len = static_cast<std::size_t>(j - i);
  const std::size_t band = len * n - len * (len - 1) / 2 + static_cast<std::size_t>(i);
  return 2 * band + static_cast<std::size_t>(side);
}

double PathDpTable::value(int i, int j, Side side) const {
  return value_[index(i, j, side)];
}

PathDpTable::Move PathDpTable::move(int i, int j, Side side) const {
  return move_[index(i, j, side)];
}

double PathDpTable::outside_weight(int i, int j) const {
  return prefix_hat_[static_cast<size_t>(i)] +
         (prefix_hat_[static_cast<size_t>(n_)] - prefix_hat_[static_cast<size_t>(j) + 1]);
}

PathDpTable::PathDpTable(const WTspInstance& instance, NodeId start)
    : inst_(&instance), start_(start) {
  require_path(instance);
  n_ = instance.n();
  if (start < 0 || start >= n_) {
    throw std::invalid_argument("start node out of range");
  }
  start_pos_ = instance.path_position(start);
  coord_.resize(static_cast<size_t>(n_));
  hat_weight_.resize(static_cast<size_t>(n_));
  for (int p = 0; p < n_; ++p) {
    const NodeId v = instance.path_order()[static_cast<size_t>(p)];
    coord_[static_cast<size_t>(p)] = instance.coordinate(v);
    hat_weight_[static_cast<size_t>(p)] = (v == start) ? 0.0 : instance.weight(v);
  }
  prefix_hat_.assign(static_cast<size_t>(n_) + 1, 0.0);
  for (int p = 0; p < n_; ++p) {
    prefix_hat_[static_cast<size_t>(p) + 1] =
        prefix_hat_[static_cast<size_t>(p)] + hat_weight_[static_cast<size_t>(p)];
  }

  const std::size_t slots = 2 * (static_cast<std::size_t>(n_) * (static_cast<std::size_t>(n_) + 1) / 2);
  value_.assign(slots, 0.0);
  move_.assign(slots, Move::None);

  const CostFunction& f = instance.f();
  const double start_coord = coord_[static_cast<size_t>(start_pos_)];

  for (int k = 0; k < n_; ++k) {
    // All other weight is already collected; only the closing approach to
    // the start remains, still excluding the start node's own weight.
    const double rate = f(prefix_hat_[static_cast<size_t>(n_)]);
    const double d = std::abs(coord_[static_cast<size_t>(k)] - start_coord);
    const double v = edge_cost(rate, d);
    value_[index(k, k, Side::Left)] = v;
    value_[index(k, k, Side::Right)] = v;
  }

  for (int len = 1; len < n_; ++len) {
    for (int i = 0; i + len < n_; ++i) {
      const int j = i + len;
      const double w_out = outside_weight(i, j);
      const double span = coord_[static_cast<size_t>(j)] - coord_[static_cast<size_t>(i)];
      {
        const double rate = f(w_out + hat_weight_[static_cast<size_t>(i)]);
        const double adj =
            edge_cost(rate, coord_[static_cast<size_t>(i) + 1] - coord_[static_cast<size_t>(i)]) +
            value_[index(i + 1, j, Side::Left)];
        const double jump = edge_cost(rate, span) + value_[index(i + 1, j, Side::Right)];
        const std::size_t at = index(i, j, Side::Left);
        if (adj <= jump) {
          value_[at] = adj;
          move_[at] = Move::Adjacent;
        } else {
          value_[at] = jump;
          move_[at] = Move::Jump;
        }
      }
      {
        const double rate = f(w_out + hat_weight_[static_cast<size_t>(j)]);
        const double adj =
            edge_cost(rate, coord_[static_cast<size_t>(j)] - coord_[static_cast<size_t>(j) - 1]) +
            value_[index(i, j - 1, Side::Right)];
        const double jump = edge_cost(rate, span) + value_[index(i, j - 1, Side::Left)];
        const std::size_t at = index(i, j, Side::Right);
        if (adj <= jump) {
          value_[at] = adj;
          move_[at] = Move::Adjacent;
        } else {
          value_[at] = jump;
          move_[at] = Move::Jump;
        }
      }
    }
  }

  const double rate0 = f(0.0);
  const double left_cost =
      value_[index(0, n_ - 1, Side::Left)] +
      edge_cost(rate0, start_coord - coord_.front());
  const double right_cost =
      value_[index(0, n_ - 1, Side::Right)] +
      edge_cost(rate0, coord_.back() - start_coord);
  if (left_cost <= right_cost) {
    final_cost_ = left_cost;
    first_side_ = Side::Left;
  } else {
    final_cost_ = right_cost;
    first_side_ = Side::Right;
  }
}

Tour PathDpTable::traceback() const {
  std::vector<int> positions;
  positions.reserve(static_cast<size_t>(n_));
  int i = 0;
  int j = n_ - 1;
  Side side = first_side_;
  positions.push_back(side == Side::Left ? i : j);
  while (i < j) {
    const Move m = move_[index(i, j, side)];
    if (side == Side::Left) {
      ++i;
      side = (m == Move::Adjacent) ? Side::Left : Side::Right;
    } else {
      --j;
      side = (m == Move::Adjacent) ? Side::Right : Side::Left;
    }
    positions.push_back(side == Side::Left ? i : j);
  }
  Tour tour;
  tour.order.reserve(static_cast<size_t>(n_));
  tour.order.push_back(start_);
  for (int p : positions) {
    const NodeId v = inst_->path_order()[static_cast<size_t>(p)];
    if (v != start_) tour.order.push_back(v);
  }
  return tour;
}

PathDpResult solve_path_fixed_start(const WTspInstance& instance) {
  PathDpTable table(instance, instance.start());
  PathDpResult res;
  res.tour = table.traceback();
  res.cost = table.final_cost();
  res.start = instance.start();
  return res;
}

PathDpResult solve_path_free_start(const WTspInstance& instance) {
  require_path(instance);
  PathDpResult best;
  bool have = false;
  for (NodeId t = 0; t < instance.n(); ++t) {
    PathDpTable table(instance, t);
    if (!have || table.final_cost() < best.cost) {
      have = true;
      best.tour = table.traceback();
      best.cost = table.final_cost();
      best.start = t;
    }
  }
  return best;
}

bool is_zigzag(const WTspInstance& instance, const Tour& tour) {
  require_path(instance);
  require_node_permutation(instance, tour);
  const int n = instance.n();
  std::vector<bool> left(static_cast<size_t>(n), true);  // unvisited, by position
  int lo = 0;
  int hi = n - 1;
  auto shrink = [&] {
    while (lo <= hi && !left[static_cast<size_t>(lo)]) ++lo;
    while (hi >= lo && !left[static_cast<size_t>(hi)]) --hi;
  };
  left[static_cast<size_t>(instance.path_position(tour.order.front()))] = false;
  shrink();
  for (size_t k = 1; k < tour.order.size(); ++k) {
    const int p = instance.path_position(tour.order[k]);
    if (p != lo && p != hi) return false;
    left[static_cast<size_t>(p)] = false;
    shrink();
  }
  return true;
}

std::optional<Tour> premature_exchange(const WTspInstance& instance,
                                       const Tour& tour) {
  require_path(instance);
  require_node_permutation(instance, tour);
  const int n = instance.n();
  std::vector<int> pos(tour.order.size());
  for (size_t k = 0; k < tour.order.size(); ++k) {
    pos[k] = instance.path_position(tour.order[k]);
  }
  std::vector<bool> unvisited(static_cast<size_t>(n), true);
  int lo = 0;
  int hi = n - 1;
  auto shrink = [&] {
    while (lo <= hi && !unvisited[static_cast<size_t>(lo)]) ++lo;
    while (hi >= lo && !unvisited[static_cast<size_t>(hi)]) --hi;
  };
  unvisited[static_cast<size_t>(pos[0])] = false;
  shrink();
  size_t premature = 0;
  for (size_t k = 1; k < tour.order.size(); ++k) {
    if (pos[k] != lo && pos[k] != hi) {
      premature = k;
      break;
    }
    unvisited[static_cast<size_t>(pos[k])] = false;
    shrink();
  }
  if (premature == 0) return std::nullopt;

  const int pv = pos[premature];
  const bool last_on_left = pos.back() < pv;
  // Latest visit on the far side of the premature position; the premature
  // node's visit moves to directly after it.
  size_t anchor = 0;
  bool found = false;
  for (size_t k = 0; k < tour.order.size(); ++k) {
    if (k == premature) continue;
    if (last_on_left ? (pos[k] > pv) : (pos[k] < pv)) {
      anchor = k;
      found = true;
    }
  }
  if (!found) return std::nullopt;

  Tour adjusted;
  adjusted.order.reserve(tour.order.size());
  const NodeId moved = tour.order[premature];
  for (size_t k = 0; k < tour.order.size(); ++k) {
    if (k == premature) continue;
    adjusted.order.push_back(tour.order[k]);
    if (k == anchor) adjusted.order.push_back(moved);
  }
  return adjusted;
}

}  // namespace wtsp
