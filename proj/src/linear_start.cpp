#include "wtsp/linear_start.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wtsp {

Tour metric_tsp_approx(const WTspInstance& inst) {
  const int n = inst.n();
  const NodeId root = inst.start();
  std::vector<bool> in_tree(static_cast<size_t>(n), false);
  std::vector<double> key(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<NodeId> parent(static_cast<size_t>(n), -1);
  key[static_cast<size_t>(root)] = 0.0;
  for (int step = 0; step < n; ++step) {
    NodeId u = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (in_tree[static_cast<size_t>(v)]) continue;
      if (u == -1 || key[static_cast<size_t>(v)] < key[static_cast<size_t>(u)]) u = v;
    }
    in_tree[static_cast<size_t>(u)] = true;
    for (NodeId v = 0; v < n; ++v) {
      if (in_tree[static_cast<size_t>(v)]) continue;
      const double d = inst.distance(u, v);
      if (d < key[static_cast<size_t>(v)]) {
        key[static_cast<size_t>(v)] = d;
        parent[static_cast<size_t>(v)] = u;
      }
    }
  }
  std::vector<std::vector<NodeId>> children(static_cast<size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    if (parent[static_cast<size_t>(v)] >= 0) {
      children[static_cast<size_t>(parent[static_cast<size_t>(v)])].push_back(v);
    }
  }
  Tour tour;
  tour.order.reserve(static_cast<size_t>(n));
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    tour.order.push_back(u);
    // push in reverse so the smallest child is visited first
    for (auto it = children[static_cast<size_t>(u)].rbegin();
         it != children[static_cast<size_t>(u)].rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return tour;
}

NormalizedTour normalize_tour(const WTspInstance& inst, const Tour& tour,
                              double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int n = inst.n();
  NormalizedTour norm;
  norm.order = tour.order;
  norm.eps = eps;
  norm.total_distance = tour_length(inst, tour);
  norm.total_weight = inst.total_weight();
  if (!(norm.total_distance > 0.0)) {
    throw std::invalid_argument("normalization needs a tour of positive length");
  }
  const double dscale = static_cast<double>(n) / norm.total_distance;
  const double wscale =
      norm.total_weight > 0.0 ? static_cast<double>(n) / norm.total_weight : 0.0;
  norm.gaps.resize(static_cast<size_t>(n));
  norm.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const NodeId a = tour.order[static_cast<size_t>(i)];
    const NodeId b = tour.order[static_cast<size_t>((i + 1) % n)];
    norm.gaps[static_cast<size_t>(i)] = inst.distance(a, b) * dscale;
    norm.weights[static_cast<size_t>(i)] = inst.weight(a) * wscale;
  }
  return norm;
}

std::vector<double> a_sequence(const NormalizedTour& norm) {
  const size_t n = norm.order.size();
  std::vector<double> a(n);
  for (size_t i = 0; i < n; ++i) {
    const double w_next = norm.weights[(i + 1) % n];
    a[i] = norm.gaps[i] - w_next + norm.eps * (1.0 - w_next);
  }
  return a;
}

int select_start(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw std::invalid_argument("empty sequence");
  double sum = 0.0;
  for (double x : a) sum += x;
  if (std::abs(sum) > 1e-9) {
    throw std::invalid_argument("sequence does not sum to zero");
  }
  double prefix = 0.0;
  double min_prefix = std::numeric_limits<double>::infinity();
  for (double x : a) {
    prefix += x;
    min_prefix = std::min(min_prefix, prefix);
  }
  // Among all positions attaining the minimal prefix sum, pick the one whose
  // successor index is smallest; the position n wraps to start 0.
  int best = n;  // sentinel: larger than any real start
  prefix = 0.0;
  for (int i = 0; i < n; ++i) {
    prefix += a[static_cast<size_t>(i)];
    if (prefix == min_prefix) {
      const int s = (i + 1) % n;
      best = std::min(best, s);
    }
  }
  return best;
}

double scaled_duration(const NormalizedTour& norm, int s) {
  const int n = static_cast<int>(norm.order.size());
  if (s < 0 || s >= n) throw std::invalid_argument("start index out of range");
  const double top_speed = static_cast<double>(n);
  double carried = 0.0;
  double duration = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) carried += norm.weights[static_cast<size_t>((s + i) % n)];
    const double speed = top_speed - carried;
    const double gap = norm.gaps[static_cast<size_t>((s + i) % n)];
    if (speed <= 1e-12) {
      if (gap > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    duration += gap / speed;
  }
  return duration;
}

double duration_bound(int n, double eps) {
  return (1.0 + eps) * (std::log(static_cast<double>(n)) + 1.0 - std::log(eps));
}

LinearSolveResult solve_linear(const WTspInstance& inst, double eps) {
  if (inst.f().kind() != CostFunction::Kind::LinearSpeed) {
    throw std::invalid_argument("linear solver needs a linear-speed cost function");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int n = inst.n();
  LinearSolveResult res;
  res.bound = duration_bound(n, eps);
  Tour base = metric_tsp_approx(inst);
  if (n == 1) {
    res.tour = base;
    return res;
  }
  const double length = tour_length(inst, base);
  if (length == 0.0 || inst.total_weight() == 0.0) {
    // No slowdown to balance: any rotation works, keep the tour as built.
    res.tour = base;
    res.cost = tour_cost(inst, res.tour);
    res.duration = length == 0.0 ? 0.0 : 1.0;
    return res;
  }
  NormalizedTour norm = normalize_tour(inst, base, eps);
  const int s = select_start(a_sequence(norm));
  res.rotation = s;
  res.tour.order.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    res.tour.order.push_back(base.order[static_cast<size_t>((s + i) % n)]);
  }
  res.cost = tour_cost(inst, res.tour);
  res.duration = scaled_duration(norm, s);
  return res;
}

LinearSolveResult solve_linear(const WTspInstance& inst, double nu_max,
                               double nu_min, double eps) {
  return solve_linear(
      inst.with_cost_function(
          CostFunction::linear_speed(nu_max, nu_min, inst.total_weight())),
      eps);
}

}  // namespace wtsp
