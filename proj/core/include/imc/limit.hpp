#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "imc/chain.hpp"
#include "imc/gamble.hpp"
#include "imc/transition.hpp"

namespace imc {

enum class ConvergenceStatus { converged, max_iter_exceeded, oscillation_detected };

std::string_view to_string(ConvergenceStatus status) noexcept;

struct Envelope {
  double min;
  double max;
};

struct ConvergenceResult {
  /// Midpoint of the final envelope.
  double limit_value = 0.0;
  std::size_t iterations = 0;
  /// (min, max) of T^n h for n = 0, ..., iterations.
  std::vector<Envelope> envelope_trace;
  ConvergenceStatus status = ConvergenceStatus::max_iter_exceeded;
};

/// Perron-Frobenius iteration h_{n+1} = T h_n until max h_n - min h_n < tol.
///
/// The envelope is monotone (min non-decreasing, max non-increasing); a
/// violation beyond rounding throws std::logic_error. When the gap stays
/// above tol and has not shrunk by a relative 1e-15 over the last 4|X|
/// steps, the iteration stops with oscillation_detected. That is a
/// diagnostic, not a proof that the orbit is periodic.
ConvergenceResult invariant_upper_expectation(const UpperTransitionOperator& op, const Gamble& h,
                                              double tol = kDefaultSettings.limit_tol,
                                              std::size_t max_iter = kDefaultSettings.max_iter);
/// Rejects non-stationary chains with ArgumentError.
ConvergenceResult invariant_upper_expectation(const TimeIndexedOperators& ops, const Gamble& h,
                                              double tol = kDefaultSettings.limit_tol,
                                              std::size_t max_iter = kDefaultSettings.max_iter);

/// (lower E_n(h), upper E_n(h)) for n = 1, ..., n_max, each computed as the
/// initial model applied to T_1 T_2 ... T_{n-1} h. Stationary chains are not
/// limited by the model horizon.
std::vector<Bounds> marginal_sequence(const ImpreciseMarkovChainModel& model, const Gamble& h,
                                      std::size_t n_max);

/// Closed form of E_{n+1}(h) for the contamination of a precise operator:
/// (1-eps)^n E_1(T^n h) + eps * sum_{k<n} (1-eps)^k max T^k h.
/// `initial` supplies E_1. Requires eps in (0, 1) and n >= 1.
double contamination_marginal(const UpperTransitionOperator& precise, double epsilon,
                              const UncertaintyModel& initial, const Gamble& h, std::size_t n);

/// eps * sum_k (1-eps)^k max T^k h, evaluated on h - min h and truncated once
/// (1-eps)^k (max h - min h) < tail_tol.
double contamination_limit(const UpperTransitionOperator& precise, double epsilon, const Gamble& h,
                           double tail_tol = 1e-12);

}  // namespace imc
