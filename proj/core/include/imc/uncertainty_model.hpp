#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "imc/gamble.hpp"
#include "imc/polytope.hpp"
#include "imc/settings.hpp"

namespace imc {

/// Model family tags, in serialisation order.
enum class ModelKind { precise, vacuous, contamination, belief, interval, polytope };

std::string_view to_string(ModelKind kind) noexcept;

struct PreciseModel {
  MassFunction mass;
  friend bool operator==(const PreciseModel&, const PreciseModel&) = default;
};

struct VacuousModel {
  friend bool operator==(const VacuousModel&, const VacuousModel&) = default;
};

/// (1 - epsilon) * base + epsilon * vacuous.
struct ContaminationModel {
  double epsilon;
  MassFunction base;
  friend bool operator==(const ContaminationModel&, const ContaminationModel&) = default;
};

struct FocalElement {
  StateSet set;
  double mass;
  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

/// Mixture of vacuous models on the focal sets.
struct BeliefModel {
  std::vector<FocalElement> focal;
  friend bool operator==(const BeliefModel&, const BeliefModel&) = default;
};

/// Probability interval with bounds tightened to reachability.
struct IntervalModel {
  std::vector<double> lower;
  std::vector<double> upper;
  friend bool operator==(const IntervalModel&, const IntervalModel&) = default;
};

struct PolytopeModel {
  CredalPolytope region;
  friend bool operator==(const PolytopeModel&, const PolytopeModel&) = default;
};

/// One credal set on a state space, in one of six representations. Instances
/// are validated (and, for intervals, normalised) by the factory functions
/// and immutable afterwards.
class UncertaintyModel {
 public:
  using Variant = std::variant<PreciseModel, VacuousModel, ContaminationModel, BeliefModel,
                               IntervalModel, PolytopeModel>;

  static UncertaintyModel precise(MassFunction mass);
  static UncertaintyModel vacuous(StateSpace space);
  /// epsilon in [0, 1]; 0 behaves as precise, 1 as vacuous.
  static UncertaintyModel contamination(double epsilon, MassFunction base);
  /// Masses must sum to 1 within 1e-12; zero-mass focal sets are dropped.
  static UncertaintyModel belief(StateSpace space, std::vector<FocalElement> focal);
  /// Bounds in [0, 1] with lower <= upper and sum(lower) <= 1 <= sum(upper);
  /// each bound is then tightened to what is reachable given the others.
  static UncertaintyModel interval(StateSpace space, std::vector<double> lower,
                                   std::vector<double> upper,
                                   const Settings& settings = kDefaultSettings);
  static UncertaintyModel polytope(CredalPolytope region);

  ModelKind kind() const noexcept { return static_cast<ModelKind>(model_.index()); }
  const StateSpace& space() const noexcept { return space_; }
  const Variant& variant() const noexcept { return model_; }

  template <class T>
  const T& as() const {
    return std::get<T>(model_);
  }

  friend bool operator==(const UncertaintyModel&, const UncertaintyModel&) = default;

 private:
  UncertaintyModel(StateSpace space, Variant model)
      : space_(std::move(space)), model_(std::move(model)) {}

  StateSpace space_;
  Variant model_;
};

/// Tight upper expectation of h over the model's credal set.
double upper(const UncertaintyModel& model, const Gamble& h);
/// Conjugate lower expectation, -upper(model, -h).
double lower(const UncertaintyModel& model, const Gamble& h);

/// Upper probability of an event for an interval model:
/// min(sum of upper masses on A, 1 - sum of lower masses off A).
double interval_upper_probability(const IntervalModel& m, const StateSet& event);

/// Exact credal set of the model as a polytope.
CredalPolytope as_polytope(const UncertaintyModel& model,
                           const Settings& settings = kDefaultSettings);

/// States with positive upper probability, decided from the model's
/// parameters rather than by evaluating upper() against a threshold.
StateSet upper_support(const UncertaintyModel& model, const Settings& settings = kDefaultSettings);

/// True iff every mass function in the credal set gives positive probability
/// to `event`. Throws ArgumentError for an empty event.
bool lower_hits(const UncertaintyModel& model, const StateSet& event,
                const Settings& settings = kDefaultSettings);

}  // namespace imc
