#include <algorithm>
#include <string>

#include "imc/errors.hpp"
#include "imc/transition.hpp"

namespace imc {

UpperTransitionOperator::UpperTransitionOperator(StateSpace space, std::vector<UncertaintyModel> rows)
    : space_(std::move(space)), rows_(std::move(rows)) {
  if (rows_.size() != space_.size())
    throw DimensionError("transition operator needs one row per state: got " +
                         std::to_string(rows_.size()) + " rows for " +
                         std::to_string(space_.size()) + " states");
  for (const auto& r : rows_) require_same_space(space_, r.space(), "transition row");
}

UpperTransitionOperator UpperTransitionOperator::from_matrix(const StateSpace& space,
                                                             const Matrix& matrix,
                                                             const Settings& settings) {
  if (matrix.rows() != space.size() || matrix.cols() != space.size())
    throw DimensionError("transition matrix size does not match the state space");
  std::vector<UncertaintyModel> rows;
  for (std::size_t x = 0; x < space.size(); ++x) {
    auto r = matrix.row(x);
    rows.push_back(UncertaintyModel::precise(MassFunction(space, {r.begin(), r.end()}, settings)));
  }
  return UpperTransitionOperator(space, std::move(rows));
}

UpperTransitionOperator UpperTransitionOperator::vacuous(const StateSpace& space) {
  return UpperTransitionOperator(space,
                                 std::vector<UncertaintyModel>(space.size(), UncertaintyModel::vacuous(space)));
}

UpperTransitionOperator UpperTransitionOperator::contaminated(const StateSpace& space,
                                                              const Matrix& matrix, double epsilon,
                                                              const Settings& settings) {
  if (matrix.rows() != space.size() || matrix.cols() != space.size())
    throw DimensionError("transition matrix size does not match the state space");
  std::vector<UncertaintyModel> rows;
  for (std::size_t x = 0; x < space.size(); ++x) {
    auto r = matrix.row(x);
    rows.push_back(
        UncertaintyModel::contamination(epsilon, MassFunction(space, {r.begin(), r.end()}, settings)));
  }
  return UpperTransitionOperator(space, std::move(rows));
}

bool UpperTransitionOperator::is_precise() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(), [](const UncertaintyModel& m) {
    if (m.kind() == ModelKind::precise) return true;
    return m.kind() == ModelKind::contamination && m.as<ContaminationModel>().epsilon == 0.0;
  });
}

Gamble apply(const UpperTransitionOperator& op, const Gamble& h, Side side) {
  require_same_space(op.space(), h.space(), "transition operator");
  std::vector<double> out(op.size());
  for (std::size_t x = 0; x < op.size(); ++x)
    out[x] = side == Side::upper ? upper(op.row(x), h) : lower(op.row(x), h);
  return Gamble(op.space(), std::move(out));
}

Gamble apply(const UpperTransitionOperator& op, const Gamble& h) { return apply(op, h, Side::upper); }

Gamble lower_apply(const UpperTransitionOperator& op, const Gamble& h) {
  return apply(op, h, Side::lower);
}

Gamble power_apply(const UpperTransitionOperator& op, const Gamble& h, std::size_t n, Side side) {
  Gamble g = h;
  for (std::size_t i = 0; i < n; ++i) g = apply(op, g, side);
  return g;
}

Matrix matrix_of(const UpperTransitionOperator& op) {
  const std::size_t n = op.size();
  Matrix t(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& row = op.row(x);
    const MassFunction* mass = nullptr;
    if (row.kind() == ModelKind::precise) {
      mass = &row.as<PreciseModel>().mass;
    } else if (row.kind() == ModelKind::contamination && row.as<ContaminationModel>().epsilon == 0.0) {
      mass = &row.as<ContaminationModel>().base;
    } else {
      throw NotPreciseError("row '" + op.space().label(x) + "' is a " +
                            std::string(to_string(row.kind())) + " model, not a precise one");
    }
    for (std::size_t y = 0; y < n; ++y) t(x, y) = (*mass)[y];
  }
  return t;
}

// TimeIndexedOperators

TimeIndexedOperators::TimeIndexedOperators(UpperTransitionOperator op)
    : steps_{std::move(op)}, stationary_(true), unbounded_(true) {}

TimeIndexedOperators::TimeIndexedOperators(std::vector<UpperTransitionOperator> steps)
    : steps_(std::move(steps)), unbounded_(false) {
  if (steps_.empty()) throw ArgumentError("at least one transition operator is required");
  for (const auto& s : steps_) require_same_space(steps_.front().space(), s.space(), "time-indexed operators");
  stationary_ = std::all_of(steps_.begin(), steps_.end(),
                            [&](const UpperTransitionOperator& s) { return s == steps_.front(); });
}

const UpperTransitionOperator& TimeIndexedOperators::at(std::size_t k) const {
  if (k == 0) throw ArgumentError("transition steps are numbered from 1");
  if (unbounded_) return steps_.front();
  if (k > steps_.size())
    throw ArgumentError("no transition operator for step " + std::to_string(k) + " (only " +
                        std::to_string(steps_.size()) + " listed)");
  return steps_[k - 1];
}

// PathMap

namespace {
std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > (std::size_t{1} << 40) / std::max<std::size_t>(base, 1))
      throw SizeCapError("map on X^n too large to store densely");
    r *= base;
  }
  return r;
}
}  // namespace

PathMap::PathMap(StateSpace space, std::size_t arity, std::vector<double> values)
    : space_(std::move(space)), arity_(arity), values_(std::move(values)) {
  if (values_.size() != checked_power(space_.size(), arity_))
    throw DimensionError("map on X^" + std::to_string(arity_) + " needs " +
                         std::to_string(checked_power(space_.size(), arity_)) + " values, got " +
                         std::to_string(values_.size()));
}

PathMap PathMap::zero(const StateSpace& space, std::size_t arity) {
  return PathMap(space, arity, std::vector<double>(checked_power(space.size(), arity), 0.0));
}

PathMap PathMap::from_function(const StateSpace& space, std::size_t arity,
                               const std::function<double(std::span<const std::size_t>)>& f) {
  PathMap out = zero(space, arity);
  for (std::size_t i = 0; i < out.values_.size(); ++i) out.values_[i] = f(out.path_of(i));
  return out;
}

PathMap PathMap::cylinder(const StateSpace& space, std::size_t arity, std::span<const std::size_t> prefix) {
  if (prefix.size() > arity) throw DimensionError("cylinder prefix longer than the map's arity");
  return from_function(space, arity, [&](std::span<const std::size_t> p) {
    return std::equal(prefix.begin(), prefix.end(), p.begin()) ? 1.0 : 0.0;
  });
}

PathMap PathMap::at_time(const Gamble& h, std::size_t arity, std::size_t time) {
  if (time == 0 || time > arity) throw ArgumentError("time index outside 1..arity");
  return from_function(h.space(), arity, [&](std::span<const std::size_t> p) { return h[p[time - 1]]; });
}

std::size_t PathMap::flat_index(std::span<const std::size_t> path) const {
  if (path.size() != arity_) throw DimensionError("path length does not match the map's arity");
  std::size_t idx = 0;
  for (auto x : path) {
    if (x >= space_.size()) throw DimensionError("state index out of range");
    idx = idx * space_.size() + x;
  }
  return idx;
}

std::vector<std::size_t> PathMap::path_of(std::size_t flat) const {
  std::vector<std::size_t> path(arity_);
  for (std::size_t i = arity_; i-- > 0;) {
    path[i] = flat % space_.size();
    flat /= space_.size();
  }
  return path;
}

double PathMap::at(std::span<const std::size_t> path) const { return values_[flat_index(path)]; }

PathMap PathMap::operator-() const {
  PathMap out = *this;
  for (double& v : out.values_) v = -v;
  return out;
}

PathMap tree_step(const UpperTransitionOperator& op, const PathMap& f, Side side) {
  require_same_space(op.space(), f.space(), "tree step");
  if (f.arity() < 2) throw DimensionError("tree step needs a map on X^(n+1) with n >= 1");
  const std::size_t n = op.size();
  const std::size_t prefixes = f.size() / n;
  std::vector<double> out(prefixes);
  std::vector<double> slice(n);
  for (std::size_t p = 0; p < prefixes; ++p) {
    for (std::size_t y = 0; y < n; ++y) slice[y] = f[p * n + y];
    const std::size_t last = p % n;  // x_n of the prefix
    Gamble g(op.space(), slice);
    out[p] = side == Side::upper ? upper(op.row(last), g) : lower(op.row(last), g);
  }
  return PathMap(op.space(), f.arity() - 1, std::move(out));
}

}  // namespace imc
