#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "imc/gamble.hpp"
#include "imc/matrix.hpp"
#include "imc/transition.hpp"

namespace imc {

/// A finite set of row-stochastic matrices. Sets built by extreme_matrices
/// are row-rectangular: every combination of per-row choices is present.
struct MatrixSet {
  StateSpace space;
  std::vector<Matrix> matrices;
  /// Vertex lists of the generating rows, when built from an operator.
  std::vector<std::vector<MassFunction>> row_vertices;

  std::size_t size() const noexcept { return matrices.size(); }
};

/// Every matrix whose row x is a vertex of row x's credal set. Throws
/// SizeCapError when the product of per-row vertex counts exceeds
/// settings.matrix_cap.
MatrixSet extreme_matrices(const UpperTransitionOperator& op,
                           const Settings& settings = kDefaultSettings);

/// min and max of (T_1 ... T_n h)(x) over all length-n products from the set,
/// computed by the backward fold g_n = h, g_{k-1}(y) = max_T (T g_k)(y).
/// The fold is exact for row-rectangular sets. Throws SizeCapError when
/// |M| * n exceeds settings.product_cap.
Bounds max_product_expectation(const MatrixSet& set, const Gamble& h, std::size_t n,
                               std::size_t x, const Settings& settings = kDefaultSettings);

/// Whole-gamble version of the fold: (lower, upper) envelopes for every x.
std::pair<Gamble, Gamble> product_envelopes(const MatrixSet& set, const Gamble& h, std::size_t n,
                                            const Settings& settings = kDefaultSettings);

/// tau(T) = 1/2 max_{x,y} sum_z |T(x,z) - T(y,z)|. Throws ArgumentError for
/// a matrix that is not row-stochastic within 1e-9.
double ergodicity_coefficient(const Matrix& m);

enum class ScramblingKind { scrambling_at, not_scrambling_witness, inconclusive };

std::string_view to_string(ScramblingKind kind) noexcept;

struct ScramblingVerdict {
  ScramblingKind kind = ScramblingKind::inconclusive;
  /// First m with every m-fold product scrambling, or the last m examined.
  std::size_t m = 0;
  /// A non-scrambling product: indices into MatrixSet::matrices of its
  /// factors and its 0/1 support pattern.
  std::vector<std::size_t> witness_factors;
  std::optional<Matrix> witness_pattern;
  /// True when the sequence of product support-pattern sets revisited an
  /// earlier set, so non-scrambling products exist for every m.
  bool proven_for_all_m = false;
};

/// Searches m = 1..m_max for the product scrambling property on support
/// patterns: every pair of rows of every m-fold product shares a positive
/// column. Reports scrambling_at m, a witness that is proven to persist for
/// all m (not_scrambling_witness), or inconclusive with the witness at m_max.
/// Limited to |X| <= 8.
ScramblingVerdict product_scrambling_check(const MatrixSet& set, std::size_t m_max,
                                           const Settings& settings = kDefaultSettings);

/// Details of the two-state counterexample T = (1-eps) id + eps max, whose
/// square is (1-delta) id + delta max with delta = eps (2 - eps).
struct StrictInclusionReport {
  double epsilon = 0.0;
  double delta = 0.0;
  /// The matrix [[1-delta, delta], [delta, 1-delta]] lies in the credal
  /// matrix set of the two-step operator.
  bool in_two_step_set = false;
  /// Upper bound on the largest min(row a off-diagonal, row b off-diagonal)
  /// entry over all products of two one-step matrices.
  double best_product_bound = 0.0;
  bool strictly_contained = false;
};

/// Grid search over the second factor's (eps3, eps4), with the first
/// factor's entries optimised exactly at the box ends (each row entry of the
/// product is linear in its own first-factor parameter) and the grid
/// spacing times the Lipschitz constant 2 added as a rigorous margin.
StrictInclusionReport strict_inclusion_analysis(double epsilon, std::size_t grid = 400);

/// True iff the delta matrix is in the two-step set but in no product of
/// one-step matrices. eps = 0 returns false; eps outside [0, 1] throws.
bool strict_inclusion_demo(double epsilon);

}  // namespace imc
