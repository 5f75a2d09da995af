#include "wtsp/instance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wtsp {

void WTspInstance::init_common(std::vector<double> weights, NodeId start,
                               CostFunction f) {
  n_ = static_cast<int>(weights.size());
  if (n_ == 0) throw std::invalid_argument("instance needs at least one node");
  for (double w : weights) {
    if (!(w >= 0.0) || std::isinf(w)) {
      throw std::invalid_argument("node weights must be finite and >= 0");
    }
  }
  if (start < 0 || start >= n_) throw std::invalid_argument("start node out of range");
  weights_ = std::move(weights);
  total_weight_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  start_ = start;
  f_ = std::move(f);
}

WTspInstance WTspInstance::path(std::vector<double> gaps,
                                std::vector<double> weights, NodeId start,
                                CostFunction f, std::vector<NodeId> order) {
  WTspInstance inst;
  inst.init_common(std::move(weights), start, std::move(f));
  const int n = inst.n_;
  if (static_cast<int>(gaps.size()) != n - 1) {
    throw std::invalid_argument("path instance needs n-1 gaps");
  }
  for (double g : gaps) {
    if (!(g >= 0.0) || std::isinf(g)) {
      throw std::invalid_argument("path gaps must be finite and >= 0");
    }
  }
  if (order.empty()) {
    order.resize(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
  }
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("path order must list every node");
  }
  inst.kind_ = MetricKind::Path;
  inst.gaps_ = std::move(gaps);
  inst.order_ = std::move(order);
  inst.pos_.assign(static_cast<size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    const NodeId v = inst.order_[static_cast<size_t>(p)];
    if (v < 0 || v >= n || inst.pos_[static_cast<size_t>(v)] != -1) {
      throw std::invalid_argument("path order is not a permutation");
    }
    inst.pos_[static_cast<size_t>(v)] = p;
  }
  inst.coords_.assign(static_cast<size_t>(n), 0.0);
  double x = 0.0;
  for (int p = 0; p < n; ++p) {
    inst.coords_[static_cast<size_t>(inst.order_[static_cast<size_t>(p)])] = x;
    if (p + 1 < n) x += inst.gaps_[static_cast<size_t>(p)];
  }
  return inst;
}

WTspInstance WTspInstance::star(NodeId center,
                                std::vector<double> leaf_distances,
                                std::vector<double> weights, NodeId start,
                                CostFunction f) {
  WTspInstance inst;
  inst.init_common(std::move(weights), start, std::move(f));
  const int n = inst.n_;
  if (static_cast<int>(leaf_distances.size()) != n) {
    throw std::invalid_argument("star instance needs one distance per node");
  }
  if (center < 0 || center >= n) throw std::invalid_argument("star center out of range");
  if (leaf_distances[static_cast<size_t>(center)] != 0.0) {
    throw std::invalid_argument("star center distance must be zero");
  }
  for (double d : leaf_distances) {
    if (!(d >= 0.0) || std::isinf(d)) {
      throw std::invalid_argument("star leaf distances must be finite and >= 0");
    }
  }
  inst.kind_ = MetricKind::Star;
  inst.center_ = center;
  inst.leaf_dist_ = std::move(leaf_distances);
  return inst;
}

WTspInstance WTspInstance::general(std::vector<std::vector<double>> distances,
                                   std::vector<double> weights, NodeId start,
                                   CostFunction f) {
  WTspInstance inst;
  inst.init_common(std::move(weights), start, std::move(f));
  const int n = inst.n_;
  if (static_cast<int>(distances.size()) != n) {
    throw std::invalid_argument("distance matrix must be n x n");
  }
  inst.kind_ = MetricKind::General;
  inst.matrix_.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(distances[static_cast<size_t>(i)].size()) != n) {
      throw std::invalid_argument("distance matrix must be n x n");
    }
    for (int j = 0; j < n; ++j) {
      const double d = distances[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (!(d >= 0.0) || std::isinf(d)) {
        throw std::invalid_argument("distances must be finite and >= 0");
      }
      inst.matrix_[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)] = d;
    }
  }
  return inst;
}

WTspInstance WTspInstance::with_start(NodeId s) const {
  if (s < 0 || s >= n_) throw std::invalid_argument("start node out of range");
  WTspInstance copy = *this;
  copy.start_ = s;
  return copy;
}

WTspInstance WTspInstance::with_cost_function(CostFunction f) const {
  WTspInstance copy = *this;
  copy.f_ = std::move(f);
  return copy;
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Asymmetry:
      os << "d(" << i << "," << j << ") != d(" << j << "," << i << ")";
      break;
    case Kind::NonzeroDiagonal:
      os << "d(" << i << "," << i << ") != 0";
      break;
    case Kind::Negative:
      os << "d(" << i << "," << j << ") < 0";
      break;
    case Kind::Triangle:
      os << "d(" << i << "," << k << ") > d(" << i << "," << j << ") + d("
         << j << "," << k << ")";
      break;
  }
  os << " (slack " << slack << ")";
  return os.str();
}

std::vector<MetricViolation> validate_metric(const WTspInstance& inst) {
  std::vector<MetricViolation> out;
  const int n = inst.n();
  const double rel = 1e-9;
  for (NodeId i = 0; i < n; ++i) {
    const double dii = inst.distance(i, i);
    if (dii != 0.0) {
      out.push_back({MetricViolation::Kind::NonzeroDiagonal, i, i, -1, dii});
    }
    for (NodeId j = i + 1; j < n; ++j) {
      const double dij = inst.distance(i, j);
      const double dji = inst.distance(j, i);
      if (dij < 0.0) out.push_back({MetricViolation::Kind::Negative, i, j, -1, dij});
      const double gap = std::abs(dij - dji);
      if (gap > rel * std::max(1.0, std::max(std::abs(dij), std::abs(dji)))) {
        out.push_back({MetricViolation::Kind::Asymmetry, i, j, -1, gap});
      }
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (j == i) continue;
      for (NodeId k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double direct = inst.distance(i, k);
        const double via = inst.distance(i, j) + inst.distance(j, k);
        const double slack = direct - via;
        if (slack > rel * std::max(1.0, direct)) {
          out.push_back({MetricViolation::Kind::Triangle, i, j, k, slack});
        }
      }
    }
  }
  return out;
}

bool tour_is_valid(const WTspInstance& inst, const Tour& tour) {
  if (static_cast<int>(tour.order.size()) != inst.n()) return false;
  if (tour.order.empty() || tour.order.front() != inst.start()) return false;
  std::vector<bool> seen(static_cast<size_t>(inst.n()), false);
  for (NodeId v : tour.order) {
    if (v < 0 || v >= inst.n() || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = true;
  }
  return true;
}

namespace {
void require_permutation(const WTspInstance& inst, const Tour& tour) {
  if (static_cast<int>(tour.order.size()) != inst.n()) {
    throw std::invalid_argument("tour does not visit every node exactly once");
  }
  std::vector<bool> seen(static_cast<size_t>(inst.n()), false);
  for (NodeId v : tour.order) {
    if (v < 0 || v >= inst.n() || seen[static_cast<size_t>(v)]) {
      throw std::invalid_argument("tour does not visit every node exactly once");
    }
    seen[static_cast<size_t>(v)] = true;
  }
}
}  // namespace

double tour_cost(const WTspInstance& inst, const Tour& tour) {
  require_permutation(inst, tour);
  const int n = inst.n();
  if (n == 1) return 0.0;
  const CostFunction& f = inst.f();
  double carried = 0.0;
  double total = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    carried += i > 0 ? inst.weight(tour.order[static_cast<size_t>(i)]) : 0.0;
    total += edge_cost(f(carried),
                       inst.distance(tour.order[static_cast<size_t>(i)],
                                     tour.order[static_cast<size_t>(i) + 1]));
  }
  carried += inst.weight(tour.order.back());
  total += edge_cost(f(carried), inst.distance(tour.order.back(), tour.order.front()));
  return total;
}

double tour_length(const WTspInstance& inst, const Tour& tour) {
  require_permutation(inst, tour);
  const int n = inst.n();
  if (n == 1) return 0.0;
  double len = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    len += inst.distance(tour.order[static_cast<size_t>(i)], tour.order[static_cast<size_t>(i) + 1]);
  }
  len += inst.distance(tour.order.back(), tour.order.front());
  return len;
}

std::vector<double> carried_weights(const WTspInstance& inst, const Tour& tour) {
  require_permutation(inst, tour);
  const int n = inst.n();
  std::vector<double> out(static_cast<size_t>(n), 0.0);
  double carried = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    carried += i > 0 ? inst.weight(tour.order[static_cast<size_t>(i)]) : 0.0;
    out[static_cast<size_t>(i)] = carried;
  }
  if (n > 1) {
    carried += inst.weight(tour.order.back());
  }
  out[static_cast<size_t>(n) - 1] = carried;
  return out;
}

}  // namespace wtsp
