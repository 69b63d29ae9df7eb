#pragma once

#include <vector>

#include "imc/gamble.hpp"
#include "imc/settings.hpp"

namespace imc {

/// The constraint E_m(coefficients) <= bound on mass functions m.
struct Halfspace {
  Gamble coefficients;
  double bound;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// A closed convex set of mass functions: the probability simplex cut by a
/// finite list of expectation bounds. Vertices are enumerated once, at
/// construction, which also establishes that the region is non-empty.
class CredalPolytope {
 public:
  /// Throws InfeasibleError (naming a small violated constraint subset) when
  /// the region is empty.
  CredalPolytope(StateSpace space, std::vector<Halfspace> halfspaces,
                 const Settings& settings = kDefaultSettings);

  /// The whole simplex.
  static CredalPolytope simplex(const StateSpace& space);

  /// Convex hull of the given mass functions, described by facet halfspaces
  /// plus equalities (as opposing halfspace pairs) for its affine hull.
  static CredalPolytope hull(const StateSpace& space, const std::vector<MassFunction>& points,
                             const Settings& settings = kDefaultSettings);

  const StateSpace& space() const noexcept { return space_; }
  const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }
  /// Extreme points, deduplicated and sorted lexicographically.
  const std::vector<MassFunction>& vertices() const noexcept { return vertices_; }

  bool contains(const MassFunction& m, double tol = kDefaultSettings.tol_feas) const;

  friend bool operator==(const CredalPolytope& a, const CredalPolytope& b) {
    return a.space_ == b.space_ && a.halfspaces_ == b.halfspaces_;
  }

 private:
  StateSpace space_;
  std::vector<Halfspace> halfspaces_;
  std::vector<MassFunction> vertices_;
};

/// All extreme points of the simplex cut by `halfspaces`. Exhaustive search
/// over every (|X|-1)-subset of active constraints (simplex facets first,
/// then the halfspaces); each candidate solves one small linear system.
/// Returns an empty list for an empty region.
std::vector<MassFunction> enumerate_vertices(const StateSpace& space,
                                             const std::vector<Halfspace>& halfspaces,
                                             const Settings& settings = kDefaultSettings);

inline const std::vector<MassFunction>& enumerate_vertices(const CredalPolytope& p) {
  return p.vertices();
}

/// max{E_m(h) : m in P}.
///
/// This is the dual side of the linear program
///   minimise  sum_f lambda_f U(f) + mu
///   s.t.      sum_f lambda_f f + mu >= h,  lambda >= 0,
/// whose optimum equals the primal maximum of E_m(h) over the constraint
/// set. The primal optimum is attained at a vertex, so the maximum is taken
/// over the cached extreme points.
double upper_expectation_lp(const CredalPolytope& p, const Gamble& h);

/// min{E_m(h) : m in P}.
double lower_expectation_lp(const CredalPolytope& p, const Gamble& h);

}  // namespace imc
