#pragma once

#include <cstddef>

namespace imc {

/// Numerical tolerances and size caps. One record is threaded through the
/// library so a single settings file can reconfigure everything.
struct Settings {
  /// Constraint feasibility and mass-function normalisation.
  double tol_feas = 1e-9;
  /// Two vertices closer than this in sup-norm are the same vertex.
  double dedup = 1e-9;
  /// Positivity cut-off for bound sums (1 - sum of upper masses) that
  /// cannot be decided exactly in floating point.
  double positivity = 1e-12;
  /// Envelope gap at which Perron-Frobenius iteration stops.
  double limit_tol = 1e-9;
  std::size_t max_iter = 100000;
  /// Maximum number of extreme matrices assembled from row vertices.
  std::size_t matrix_cap = 1000000;
  /// Maximum matrix-fold work (|M| * n) in set-chain evaluation.
  std::size_t product_cap = 10000000;
  /// Maximum number of distinct support patterns kept per scrambling step.
  std::size_t pattern_cap = 1000000;
};

inline const Settings kDefaultSettings{};

}  // namespace imc
