#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace wtsp {

inline constexpr double kInfiniteRate = std::numeric_limits<double>::infinity();

/// Cost per unit distance as a monotone nondecreasing function of the
/// weight carried so far. Three variants cover all instances handled by
/// the toolkit: a flat rate, a right-closed step table (rates may be
/// infinite), and the reciprocal-speed model where speed drops linearly
/// from nu_max to nu_min as the carried weight approaches w_ref.
class CostFunction {
public:
  enum class Kind { Constant, Step, LinearSpeed };

  static CostFunction constant(double rate);

  // Step table: f(w) = rates[k] for thresholds[k-1] < w <= thresholds[k],
  // and beyond_rate for w > thresholds.back(). Thresholds must be strictly
  // increasing and rates nondecreasing (including beyond_rate).
  static CostFunction step(std::vector<double> thresholds,
                           std::vector<double> rates, double beyond_rate);

  // f(w) = 1 / (nu_max - nu * w) with nu = (nu_max - nu_min) / w_ref.
  // w_ref == 0 degenerates to a constant speed of nu_max.
  static CostFunction linear_speed(double nu_max, double nu_min, double w_ref);

  double operator()(double weight) const;

  Kind kind() const { return kind_; }
  double rate() const { return rate_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<double>& rates() const { return rates_; }
  double beyond_rate() const { return beyond_rate_; }
  double nu_max() const { return nu_max_; }
  double nu_min() const { return nu_min_; }
  double w_ref() const { return w_ref_; }

  bool operator==(const CostFunction& other) const = default;

private:
  CostFunction() = default;

  Kind kind_ = Kind::Constant;
  double rate_ = 1.0;
  std::vector<double> thresholds_;
  std::vector<double> rates_;
  double beyond_rate_ = 0.0;
  double nu_max_ = 1.0;
  double nu_min_ = 0.0;
  double w_ref_ = 0.0;
};

// Cost of one edge: rate * distance with the convention 0 * inf = 0, so a
// zero-length hop at an infinite rate is free while any positive-length one
// makes the tour cost infinite.
double edge_cost(double rate, double distance);

}  // namespace wtsp
