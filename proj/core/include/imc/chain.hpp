#pragma once

#include <cstddef>
#include <span>

#include "imc/gamble.hpp"
#include "imc/transition.hpp"
#include "imc/uncertainty_model.hpp"

namespace imc {

/// Imprecise Markov chain on a finite horizon: an initial credal set and the
/// transition operators T_1, ..., T_{N-1}.
class ImpreciseMarkovChainModel {
 public:
  /// Throws ArgumentError for horizon 0 or too few listed steps, and
  /// DimensionError when the initial model and operators disagree on the space.
  ImpreciseMarkovChainModel(UncertaintyModel initial, TimeIndexedOperators transitions,
                            std::size_t horizon);

  const StateSpace& space() const noexcept { return initial_.space(); }
  const UncertaintyModel& initial() const noexcept { return initial_; }
  const TimeIndexedOperators& transitions() const noexcept { return transitions_; }
  std::size_t horizon() const noexcept { return horizon_; }
  bool stationary() const noexcept { return transitions_.stationary(); }

  /// Same chain with another initial credal set.
  ImpreciseMarkovChainModel with_initial(UncertaintyModel initial) const;
  /// Same chain with another horizon (must stay covered by the operators).
  ImpreciseMarkovChainModel with_horizon(std::size_t horizon) const;

 private:
  UncertaintyModel initial_;
  TimeIndexedOperators transitions_;
  std::size_t horizon_;
};

/// Joint upper expectation of f on X^N by backwards recursion: fold f
/// through the tree steps for n = N-1 down to 1 and finish with the initial
/// upper expectation.
double joint_upper(const ImpreciseMarkovChainModel& model, const PathMap& f);
double joint_lower(const ImpreciseMarkovChainModel& model, const PathMap& f);
double joint_expectation(const ImpreciseMarkovChainModel& model, const PathMap& f, Side side);

/// Conditional upper expectation of f given the situation x_{1:n}. For
/// n = N the value is f(situation); the root situation (n = 0) is rejected
/// with ArgumentError since it is the joint expectation.
double conditional_upper(const ImpreciseMarkovChainModel& model, const PathMap& f,
                         std::span<const std::size_t> situation);
double conditional_lower(const ImpreciseMarkovChainModel& model, const PathMap& f,
                         std::span<const std::size_t> situation);

/// Lower and upper probability of the path x_{1:m} (m <= N) as the initial
/// probability of x_1 times the one-step transition probabilities.
Bounds path_bounds(const ImpreciseMarkovChainModel& model, std::span<const std::size_t> path);

}  // namespace imc
