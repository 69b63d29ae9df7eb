#include <algorithm>
#include <cmath>
#include <string>

#include "imc/errors.hpp"
#include "imc/reliability.hpp"

namespace imc {

void validate(const ReliabilitySpec& spec) {
  if (spec.k == 0) throw ArgumentError("k must be at least 1");
  if (spec.n == 0) throw ArgumentError("n must be at least 1");
  if (!(spec.r_lower >= 0.0 && spec.r_lower <= spec.r_upper && spec.r_upper <= 1.0))
    throw ArgumentError("reliability bounds must satisfy 0 <= r_lower <= r_upper <= 1, got [" +
                        std::to_string(spec.r_lower) + ", " + std::to_string(spec.r_upper) + "]");
}

ImpreciseMarkovChainModel build_embedded_chain(const ReliabilitySpec& spec) {
  validate(spec);
  const std::size_t states = spec.k + 1;
  const StateSpace space = StateSpace::numbered(states);
  std::vector<UncertaintyModel> rows;
  rows.reserve(states);
  for (std::size_t l = 0; l < spec.k; ++l) {
    std::vector<double> lo(states, 0.0), up(states, 0.0);
    lo[l] = spec.r_lower;
    lo[l + 1] = 1.0 - spec.r_upper;
    up[l] = spec.r_upper;
    up[l + 1] = 1.0 - spec.r_lower;
    rows.push_back(UncertaintyModel::interval(space, std::move(lo), std::move(up)));
  }
  rows.push_back(UncertaintyModel::precise(MassFunction::point(space, spec.k)));
  return ImpreciseMarkovChainModel(UncertaintyModel::precise(MassFunction::point(space, 0)),
                                   TimeIndexedOperators(UpperTransitionOperator(space, std::move(rows))),
                                   spec.n + 1);
}

Bounds failure_bounds(const ReliabilitySpec& spec) {
  const auto chain = build_embedded_chain(spec);
  const auto& op = chain.transitions().at(1);
  const Gamble failed = Gamble::indicator(chain.space(), spec.k);
  return {lower(chain.initial(), power_apply(op, failed, spec.n, Side::lower)),
          upper(chain.initial(), power_apply(op, failed, spec.n, Side::upper))};
}

double binomial_failure(std::size_t k, std::size_t n, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("reliability must lie in [0, 1]");
  if (k > n) return 0.0;
  double survive = 0.0;
  if (n <= 50) {
    double choose = 1.0;  // C(n, l)
    for (std::size_t l = 0; l < k && l <= n; ++l) {
      survive += choose * std::pow(r, static_cast<double>(n - l)) * std::pow(1.0 - r, static_cast<double>(l));
      choose = choose * static_cast<double>(n - l) / static_cast<double>(l + 1);
    }
  } else {
    const double log_r = std::log(r);
    const double log_q = std::log1p(-r);
    const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::size_t l = 0; l < k && l <= n; ++l) {
      // Skip 0 * log(0) factors: a zero exponent contributes 1.
      double e = lg_n - std::lgamma(static_cast<double>(l) + 1.0) -
                 std::lgamma(static_cast<double>(n - l) + 1.0);
      if (n - l > 0) e += static_cast<double>(n - l) * log_r;
      if (l > 0) e += static_cast<double>(l) * log_q;
      survive += std::exp(e);
    }
  }
  return std::clamp(1.0 - survive, 0.0, 1.0);
}

Bounds failure_bounds_closed_form(const ReliabilitySpec& spec) {
  validate(spec);
  return {binomial_failure(spec.k, spec.n, spec.r_upper), binomial_failure(spec.k, spec.n, spec.r_lower)};
}

std::vector<SweepRow> reliability_sweep(std::size_t k, const std::vector<double>& r_values,
                                        const std::vector<double>& epsilons,
                                        const std::vector<std::size_t>& n_values) {
  if (r_values.empty() || epsilons.empty() || n_values.empty())
    throw ArgumentError("sweep grid needs at least one value of r, epsilon and n");
  std::vector<SweepRow> rows;
  for (double r : r_values)
    for (double eps : epsilons) {
      if (!(eps >= 0.0) || r - eps < 0.0 || r + eps > 1.0)
        throw ArgumentError("interval [r - epsilon, r + epsilon] leaves [0, 1] for r = " +
                            std::to_string(r) + ", epsilon = " + std::to_string(eps));
      for (std::size_t n : n_values) {
        ReliabilitySpec spec{k, n, r - eps, r + eps};
        auto b = failure_bounds(spec);
        rows.push_back({r, eps, n, b.lower, b.upper});
      }
    }
  return rows;
}

}  // namespace imc
