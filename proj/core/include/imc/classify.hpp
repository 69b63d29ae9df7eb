#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "imc/state_space.hpp"
#include "imc/transition.hpp"

namespace imc {

/// Edge x -> y iff the upper transition probability T 1_{y}(x) is positive.
struct SupportDigraph {
  std::vector<StateSet> successors;

  std::size_t size() const noexcept { return successors.size(); }
  bool has_edge(std::size_t from, std::size_t to) const { return successors[from].contains(to); }
};

SupportDigraph support_digraph(const UpperTransitionOperator& op,
                               const Settings& settings = kDefaultSettings);

/// States reachable from `from` by paths of exactly n edges.
StateSet reachable_in(const SupportDigraph& graph, std::size_t from, std::size_t n);

/// y is accessible from x in exactly n steps under the upper accessibility
/// relation. n = 0 means x == y.
bool n_step_accessible(const UpperTransitionOperator& op, std::size_t x, std::size_t y,
                       std::size_t n, const Settings& settings = kDefaultSettings);
bool n_step_accessible(const SupportDigraph& graph, std::size_t x, std::size_t y, std::size_t n);

struct CommunicationClass {
  std::vector<std::size_t> states;  // ascending
  /// gcd of cycle lengths through the class; 0 when the class has no cycle
  /// (a single transient state without a self-loop).
  std::size_t period = 0;
  bool maximal = false;
  /// Residue of each state, relative to states.front(), modulo the period.
  /// Filled for maximal classes only; aligned with `states`.
  std::vector<std::size_t> cyclic_residues;
};

struct ClassificationReport {
  /// Ordered by smallest member state.
  std::vector<CommunicationClass> classes;
  /// class_of[x] indexes `classes`.
  std::vector<std::size_t> class_of;
  /// Hasse edges (a, b): class b is an immediate successor of class a.
  std::vector<std::pair<std::size_t, std::size_t>> order;
  std::vector<std::size_t> maximal_classes;
  std::vector<std::size_t> transient_classes;
  /// The unique maximal class, when there is one. When it is also aperiodic
  /// it is the set of maximal regular states.
  std::optional<std::size_t> top_class;

  bool regular = false;
  bool maximal_class_regular = false;
  bool top_class_regular = false;
  bool regularly_absorbing = false;
};

ClassificationReport classify(const UpperTransitionOperator& op,
                              const Settings& settings = kDefaultSettings);
ClassificationReport classify(const SupportDigraph& graph);

/// Outcome of the regularly-absorbing test. hit_step[y] is the smallest
/// k >= 1 with y in L^k(X_R), where L(S) = {y : lower_hits(row y, S)}.
struct AbsorptionWitness {
  bool regularly_absorbing = false;
  bool top_class_regular = false;
  StateSet top_class;
  std::vector<std::optional<std::size_t>> hit_step;
  StateSet unreached;
};

/// The lower-support set map L(S) = {y : every row-y mass function puts
/// positive probability on S}. L of the empty set is empty.
StateSet lower_support_step(const UpperTransitionOperator& op, const StateSet& target,
                            const Settings& settings = kDefaultSettings);

AbsorptionWitness regularly_absorbing(const UpperTransitionOperator& op,
                                      const Settings& settings = kDefaultSettings);

}  // namespace imc
