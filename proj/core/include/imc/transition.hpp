#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "imc/gamble.hpp"
#include "imc/matrix.hpp"
#include "imc/uncertainty_model.hpp"

namespace imc {

/// Upper transition operator: row x holds the credal set for the next state
/// given the current state x, and (T h)(x) is that row's upper expectation.
class UpperTransitionOperator {
 public:
  /// One row per state, all on `space`.
  UpperTransitionOperator(StateSpace space, std::vector<UncertaintyModel> rows);

  /// Precise operator of a row-stochastic matrix.
  static UpperTransitionOperator from_matrix(const StateSpace& space, const Matrix& matrix,
                                             const Settings& settings = kDefaultSettings);
  /// Every row vacuous.
  static UpperTransitionOperator vacuous(const StateSpace& space);
  /// Row x is the contamination of row x of `matrix`.
  static UpperTransitionOperator contaminated(const StateSpace& space, const Matrix& matrix,
                                              double epsilon,
                                              const Settings& settings = kDefaultSettings);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const UncertaintyModel& row(std::size_t x) const { return rows_.at(x); }
  const std::vector<UncertaintyModel>& rows() const noexcept { return rows_; }
  bool is_precise() const noexcept;

  friend bool operator==(const UpperTransitionOperator&, const UpperTransitionOperator&) = default;

 private:
  StateSpace space_;
  std::vector<UncertaintyModel> rows_;
};

enum class Side { lower, upper };

/// (T h)(x) = upper(row x, h).
Gamble apply(const UpperTransitionOperator& op, const Gamble& h);
/// Conjugate lower operator, -T(-h).
Gamble lower_apply(const UpperTransitionOperator& op, const Gamble& h);
Gamble apply(const UpperTransitionOperator& op, const Gamble& h, Side side);

/// n-fold application; n = 0 returns h.
Gamble power_apply(const UpperTransitionOperator& op, const Gamble& h, std::size_t n,
                   Side side = Side::upper);

/// Transition matrix T(x, y) = T 1_{y}(x). Throws NotPreciseError when some
/// row is not a precise model (contamination with epsilon 0 counts as precise).
Matrix matrix_of(const UpperTransitionOperator& op);

/// Per-step operators T_1, ..., T_{N-1} of a possibly non-stationary chain.
class TimeIndexedOperators {
 public:
  /// Stationary: the same operator at every step, without a horizon limit.
  explicit TimeIndexedOperators(UpperTransitionOperator op);
  /// Non-empty list on a common state space.
  explicit TimeIndexedOperators(std::vector<UpperTransitionOperator> steps);

  const StateSpace& space() const noexcept { return steps_.front().space(); }
  /// True when every step uses the same operator.
  bool stationary() const noexcept { return stationary_; }
  /// True when built from a single operator (any number of steps allowed).
  bool unbounded() const noexcept { return unbounded_; }
  /// Number of explicitly listed steps (1 for the stationary form).
  std::size_t listed_steps() const noexcept { return steps_.size(); }
  const std::vector<UpperTransitionOperator>& steps() const noexcept { return steps_; }

  /// Operator for the transition from time k to k+1 (k >= 1).
  const UpperTransitionOperator& at(std::size_t k) const;

 private:
  std::vector<UpperTransitionOperator> steps_;
  bool stationary_ = true;
  bool unbounded_ = false;
};

/// A real-valued map on X^n, stored densely with row-major tuple indexing
/// (the last coordinate varies fastest).
class PathMap {
 public:
  PathMap(StateSpace space, std::size_t arity, std::vector<double> values);
  static PathMap zero(const StateSpace& space, std::size_t arity);
  static PathMap from_function(const StateSpace& space, std::size_t arity,
                               const std::function<double(std::span<const std::size_t>)>& f);
  /// Indicator of all length-`arity` paths starting with `prefix`.
  static PathMap cylinder(const StateSpace& space, std::size_t arity,
                          std::span<const std::size_t> prefix);
  /// h(x_time) as a map on X^arity (time is 1-based).
  static PathMap at_time(const Gamble& h, std::size_t arity, std::size_t time);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  double at(std::span<const std::size_t> path) const;
  double operator[](std::size_t flat) const { return values_[flat]; }
  std::size_t flat_index(std::span<const std::size_t> path) const;
  /// Inverse of flat_index.
  std::vector<std::size_t> path_of(std::size_t flat) const;

  PathMap operator-() const;

  friend bool operator==(const PathMap&, const PathMap&) = default;

 private:
  StateSpace space_;
  std::size_t arity_;
  std::vector<double> values_;
};

/// Generalised tree step: maps f on X^{n+1} to the map on X^n whose value in
/// x_{1:n} is row x_n's upper (or lower) expectation of f(x_{1:n}, .).
/// Throws DimensionError for arity below 2.
PathMap tree_step(const UpperTransitionOperator& op, const PathMap& f, Side side = Side::upper);

}  // namespace imc
