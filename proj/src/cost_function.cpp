#include "wtsp/cost_function.hpp"

#include <cmath>
#include <stdexcept>

namespace wtsp {

CostFunction CostFunction::constant(double rate) {
  if (!(rate >= 0.0)) {
    throw std::invalid_argument("constant cost function needs rate >= 0");
  }
  CostFunction f;
  f.kind_ = Kind::Constant;
  f.rate_ = rate;
  return f;
}

CostFunction CostFunction::step(std::vector<double> thresholds,
                                std::vector<double> rates,
                                double beyond_rate) {
  if (thresholds.size() != rates.size()) {
    throw std::invalid_argument("step cost function: thresholds/rates size mismatch");
  }
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (std::isnan(thresholds[k]) || (k > 0 && thresholds[k] <= thresholds[k - 1])) {
      throw std::invalid_argument("step cost function: thresholds must be strictly increasing");
    }
    if (!(rates[k] >= 0.0)) {
      throw std::invalid_argument("step cost function: rates must be >= 0");
    }
    if (k > 0 && rates[k] < rates[k - 1]) {
      throw std::invalid_argument("step cost function: rates must be nondecreasing");
    }
  }
  if (!(beyond_rate >= 0.0) ||
      (!rates.empty() && beyond_rate < rates.back())) {
    throw std::invalid_argument("step cost function: beyond_rate breaks monotonicity");
  }
  CostFunction f;
  f.kind_ = Kind::Step;
  f.thresholds_ = std::move(thresholds);
  f.rates_ = std::move(rates);
  f.beyond_rate_ = beyond_rate;
  return f;
}

CostFunction CostFunction::linear_speed(double nu_max, double nu_min,
                                        double w_ref) {
  if (!(nu_max > 0.0) || !(nu_min >= 0.0) || nu_min > nu_max) {
    throw std::invalid_argument("linear_speed needs nu_max >= nu_min >= 0, nu_max > 0");
  }
  if (!(w_ref >= 0.0)) {
    throw std::invalid_argument("linear_speed needs w_ref >= 0");
  }
  CostFunction f;
  f.kind_ = Kind::LinearSpeed;
  f.nu_max_ = nu_max;
  f.nu_min_ = nu_min;
  f.w_ref_ = w_ref;
  return f;
}

double CostFunction::operator()(double weight) const {
  switch (kind_) {
    case Kind::Constant:
      return rate_;
    case Kind::Step: {
      // Right-closed intervals: f(threshold) keeps the pre-threshold rate.
      for (std::size_t k = 0; k < thresholds_.size(); ++k) {
        if (weight <= thresholds_[k]) return rates_[k];
      }
      return beyond_rate_;
    }
    case Kind::LinearSpeed: {
      const double nu = w_ref_ > 0.0 ? (nu_max_ - nu_min_) / w_ref_ : 0.0;
      const double speed = nu_max_ - nu * weight;
      if (speed <= 1e-12) return kInfiniteRate;
      return 1.0 / speed;
    }
  }
  return rate_;
}

double edge_cost(double rate, double distance) {
  if (std::isinf(rate)) {
    return distance == 0.0 ? 0.0 : kInfiniteRate;
  }
  return rate * distance;
}

}  // namespace wtsp
