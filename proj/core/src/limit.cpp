#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "imc/errors.hpp"
#include "imc/limit.hpp"

namespace imc {

std::string_view to_string(ConvergenceStatus status) noexcept {
  switch (status) {
    case ConvergenceStatus::converged: return "converged";
    case ConvergenceStatus::max_iter_exceeded: return "max_iter_exceeded";
    case ConvergenceStatus::oscillation_detected: return "oscillation_detected";
  }
  return "unknown";
}

ConvergenceResult invariant_upper_expectation(const UpperTransitionOperator& op, const Gamble& h,
                                              double tol, std::size_t max_iter) {
  require_same_space(op.space(), h.space(), "limit iteration");
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  const std::size_t window = 4 * op.size();
  // Rounding slack for the monotonicity assertion.
  const double slack = 1e-12 * std::max(1.0, std::max(std::abs(h.min()), std::abs(h.max())));

  ConvergenceResult result;
  Gamble g = h;
  result.envelope_trace.push_back({g.min(), g.max()});
  for (std::size_t n = 0;; ++n) {
    const Envelope& env = result.envelope_trace.back();
    const double gap = env.max - env.min;
    result.iterations = n;
    result.limit_value = 0.5 * (env.max + env.min);
    if (gap < tol) {
      result.status = ConvergenceStatus::converged;
      return result;
    }
    if (n >= window) {
      const Envelope& old = result.envelope_trace[n - window];
      const double old_gap = old.max - old.min;
      if (old_gap - gap <= 1e-15 * old_gap) {
        result.status = ConvergenceStatus::oscillation_detected;
        return result;
      }
    }
    if (n == max_iter) {
      result.status = ConvergenceStatus::max_iter_exceeded;
      return result;
    }
    g = apply(op, g);
    Envelope next{g.min(), g.max()};
    if (next.min < env.min - slack || next.max > env.max + slack)
      throw std::logic_error("envelope of T^n h is not monotone at step " + std::to_string(n + 1));
    result.envelope_trace.push_back(next);
  }
}

ConvergenceResult invariant_upper_expectation(const TimeIndexedOperators& ops, const Gamble& h,
                                              double tol, std::size_t max_iter) {
  if (!ops.stationary())
    throw ArgumentError("the limit iteration needs a stationary chain");
  return invariant_upper_expectation(ops.steps().front(), h, tol, max_iter);
}

std::vector<Bounds> marginal_sequence(const ImpreciseMarkovChainModel& model, const Gamble& h,
                                      std::size_t n_max) {
  require_same_space(model.space(), h.space(), "marginal sequence");
  if (n_max == 0) throw ArgumentError("n_max must be at least 1");
  const auto& ops = model.transitions();
  std::vector<Bounds> out;
  out.reserve(n_max);
  if (ops.stationary()) {
    Gamble up = h, lo = h;
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (n > 1) {
        up = apply(ops.at(1), up);
        lo = lower_apply(ops.at(1), lo);
      }
      out.push_back({lower(model.initial(), lo), upper(model.initial(), up)});
    }
    return out;
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    Gamble up = h, lo = h;
    for (std::size_t k = n - 1; k >= 1; --k) {
      up = apply(ops.at(k), up);
      lo = lower_apply(ops.at(k), lo);
    }
    out.push_back({lower(model.initial(), lo), upper(model.initial(), up)});
  }
  return out;
}

namespace {
void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ArgumentError("contamination parameter must lie in (0, 1), got " + std::to_string(epsilon));
}
}  // namespace

double contamination_marginal(const UpperTransitionOperator& precise, double epsilon,
                              const UncertaintyModel& initial, const Gamble& h, std::size_t n) {
  check_epsilon(epsilon);
  if (n == 0) throw ArgumentError("n must be at least 1");
  if (!precise.is_precise()) throw NotPreciseError("contamination closed form needs a precise operator");
  require_same_space(initial.space(), precise.space(), "initial model");
  Gamble g = h;
  double sum = 0.0;
  double weight = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += weight * g.max();
    weight *= 1.0 - epsilon;
    g = apply(precise, g);
  }
  return weight * upper(initial, g) + epsilon * sum;
}

double contamination_limit(const UpperTransitionOperator& precise, double epsilon, const Gamble& h,
                           double tail_tol) {
  check_epsilon(epsilon);
  if (!precise.is_precise()) throw NotPreciseError("contamination closed form needs a precise operator");
  if (!(tail_tol > 0.0)) throw ArgumentError("tail tolerance must be positive");
  const double base = h.min();
  const double range = h.max() - base;
  Gamble g = h - base;
  double sum = 0.0;
  double weight = 1.0;
  for (std::size_t k = 0; weight * range >= tail_tol; ++k) {
    if (k > kDefaultSettings.max_iter * 100)
      throw ArgumentError("contamination series needs too many terms for this epsilon");
    sum += weight * g.max();
    weight *= 1.0 - epsilon;
    g = apply(precise, g);
  }
  return base + epsilon * sum;
}

}  // namespace imc
