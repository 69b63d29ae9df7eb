#include <string>

#include "imc/chain.hpp"
#include "imc/errors.hpp"

namespace imc {

ImpreciseMarkovChainModel::ImpreciseMarkovChainModel(UncertaintyModel initial,
                                                     TimeIndexedOperators transitions,
                                                     std::size_t horizon)
    : initial_(std::move(initial)), transitions_(std::move(transitions)), horizon_(horizon) {
  if (horizon_ == 0) throw ArgumentError("horizon must be at least 1");
  require_same_space(initial_.space(), transitions_.space(), "initial model and transitions");
  if (!transitions_.unbounded() && transitions_.listed_steps() + 1 < horizon_)
    throw ArgumentError("horizon " + std::to_string(horizon_) + " needs " +
                        std::to_string(horizon_ - 1) + " transition operators, only " +
                        std::to_string(transitions_.listed_steps()) + " given");
}

ImpreciseMarkovChainModel ImpreciseMarkovChainModel::with_initial(UncertaintyModel initial) const {
  return ImpreciseMarkovChainModel(std::move(initial), transitions_, horizon_);
}

ImpreciseMarkovChainModel ImpreciseMarkovChainModel::with_horizon(std::size_t horizon) const {
  return ImpreciseMarkovChainModel(initial_, transitions_, horizon);
}

namespace {

void check_map(const ImpreciseMarkovChainModel& model, const PathMap& f) {
  require_same_space(model.space(), f.space(), "joint gamble");
  if (f.arity() != model.horizon())
    throw DimensionError("gamble is defined on X^" + std::to_string(f.arity()) +
                         " but the horizon is " + std::to_string(model.horizon()));
}

// Fold f on X^N down to X^n with the tree steps T_{N-1}, ..., T_n.
PathMap fold_to(const ImpreciseMarkovChainModel& model, PathMap f, std::size_t n, Side side) {
  for (std::size_t k = model.horizon() - 1; k >= n && k >= 1; --k) {
    f = tree_step(model.transitions().at(k), f, side);
    if (k == 1) break;
  }
  return f;
}

}  // namespace

double joint_expectation(const ImpreciseMarkovChainModel& model, const PathMap& f, Side side) {
  check_map(model, f);
  PathMap g = fold_to(model, f, 1, side);
  Gamble h(model.space(), {g.values().begin(), g.values().end()});
  return side == Side::upper ? upper(model.initial(), h) : lower(model.initial(), h);
}

double joint_upper(const ImpreciseMarkovChainModel& model, const PathMap& f) {
  return joint_expectation(model, f, Side::upper);
}

double joint_lower(const ImpreciseMarkovChainModel& model, const PathMap& f) {
  return joint_expectation(model, f, Side::lower);
}

namespace {
double conditional(const ImpreciseMarkovChainModel& model, const PathMap& f,
                   std::span<const std::size_t> situation, Side side) {
  check_map(model, f);
  if (situation.empty())
    throw ArgumentError("the root situation has no conditional; use the joint expectation");
  if (situation.size() > model.horizon())
    throw DimensionError("situation longer than the horizon");
  if (situation.size() == model.horizon()) return f.at(situation);
  return fold_to(model, f, situation.size(), side).at(situation);
}
}  // namespace

double conditional_upper(const ImpreciseMarkovChainModel& model, const PathMap& f,
                         std::span<const std::size_t> situation) {
  return conditional(model, f, situation, Side::upper);
}

double conditional_lower(const ImpreciseMarkovChainModel& model, const PathMap& f,
                         std::span<const std::size_t> situation) {
  return conditional(model, f, situation, Side::lower);
}

Bounds path_bounds(const ImpreciseMarkovChainModel& model, std::span<const std::size_t> path) {
  if (path.empty()) throw ArgumentError("path must contain at least one state");
  if (path.size() > model.horizon()) throw DimensionError("path longer than the horizon");
  const auto& space = model.space();
  for (auto x : path)
    if (x >= space.size()) throw DimensionError("state index out of range");
  Gamble first = Gamble::indicator(space, path[0]);
  Bounds b{lower(model.initial(), first), upper(model.initial(), first)};
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& row = model.transitions().at(k).row(path[k - 1]);
    Gamble ind = Gamble::indicator(space, path[k]);
    b.lower *= lower(row, ind);
    b.upper *= upper(row, ind);
  }
  return b;
}

}  // namespace imc
