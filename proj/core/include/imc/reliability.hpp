#pragma once

#include <cstddef>
#include <vector>

#include "imc/chain.hpp"
#include "imc/gamble.hpp"

namespace imc {

/// k-out-of-n:F system whose components share the reliability interval
/// [r_lower, r_upper].
struct ReliabilitySpec {
  std::size_t k = 1;
  std::size_t n = 1;
  double r_lower = 1.0;
  double r_upper = 1.0;
};

/// Throws ArgumentError for k == 0, n == 0 or bounds outside 0 <= lo <= hi <= 1.
void validate(const ReliabilitySpec& spec);

/// Embedded chain on failure counts {0, ..., k}: row l < k is an interval
/// model on {l, l+1} with lower (r_lower, 1 - r_upper) and upper
/// (r_upper, 1 - r_lower); row k is absorbing; the initial model is the
/// point mass at 0. Horizon n + 1.
ImpreciseMarkovChainModel build_embedded_chain(const ReliabilitySpec& spec);

/// (lower, upper) failure probability after n components, by operator powers
/// applied to the indicator of {k}.
Bounds failure_bounds(const ReliabilitySpec& spec);

/// 1 - sum_{l<k} C(n,l) r^{n-l} (1-r)^l, accumulated in the log domain for
/// n > 50.
double binomial_failure(std::size_t k, std::size_t n, double r);

/// Binomial closed form: upper uses r_lower, lower uses r_upper.
Bounds failure_bounds_closed_form(const ReliabilitySpec& spec);

struct SweepRow {
  double r;
  double epsilon;
  std::size_t n;
  double f_lower;
  double f_upper;
};

/// Rows for every (r, epsilon, n) with reliability interval
/// [r - epsilon, r + epsilon], in grid order (r outermost, n innermost).
/// Throws ArgumentError for an empty grid or an interval leaving [0, 1].
std::vector<SweepRow> reliability_sweep(std::size_t k, const std::vector<double>& r_values,
                                        const std::vector<double>& epsilons,
                                        const std::vector<std::size_t>& n_values);

}  // namespace imc
