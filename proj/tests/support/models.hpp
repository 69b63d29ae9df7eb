#pragma once

// Small named models shared by the unit and acceptance tests.

#include "imc/imc.hpp"

namespace imc::testing {

inline const StateSpace& two_states() {
  static const StateSpace s{"a", "b"};
  return s;
}

inline const StateSpace& three_states() {
  static const StateSpace s{"a", "b", "c"};
  return s;
}

/// Two-state flip-biased walk contaminated with eps = 0.1.
inline UpperTransitionOperator contaminated_walk() {
  return UpperTransitionOperator::contaminated(two_states(), Matrix{{0.15, 0.85}, {0.85, 0.15}}, 0.1);
}

/// Initial credal set 0.6 <= m(a) <= 0.9.
inline UncertaintyModel walk_initial() {
  return UncertaintyModel::interval(two_states(), {0.6, 0.1}, {0.9, 0.4});
}

inline UncertaintyModel walk_other_initial() {
  return UncertaintyModel::interval(two_states(), {0.0, 0.8}, {0.2, 1.0});
}

/// Three-state chain with interval rows: lower and upper transition masses
/// (in units of 1/200) [[9,9,162],[144,18,18],[9,162,9]] and
/// [[19,19,172],[154,28,28],[19,172,19]].
inline UpperTransitionOperator interval_cycle() {
  const double lo[3][3] = {{9, 9, 162}, {144, 18, 18}, {9, 162, 9}};
  const double up[3][3] = {{19, 19, 172}, {154, 28, 28}, {19, 172, 19}};
  std::vector<UncertaintyModel> rows;
  for (int x = 0; x < 3; ++x) {
    std::vector<double> l(3), u(3);
    for (int y = 0; y < 3; ++y) {
      l[y] = lo[x][y] / 200;
      u[y] = up[x][y] / 200;
    }
    rows.push_back(UncertaintyModel::interval(three_states(), l, u));
  }
  return UpperTransitionOperator(three_states(), std::move(rows));
}

/// Three initial credal sets for interval_cycle, as interval models.
inline std::vector<UncertaintyModel> interval_cycle_initials() {
  const auto& s = three_states();
  return {UncertaintyModel::interval(s, {0.6, 0.02, 0.1}, {0.8, 0.25, 0.2}),
          UncertaintyModel::interval(s, {0.05, 0.4, 0.0}, {0.4, 0.9, 0.4}),
          UncertaintyModel::interval(s, {0.0, 0.0, 0.9}, {0.1, 0.1, 1.0})};
}

inline UpperTransitionOperator two_cycle() {
  return UpperTransitionOperator::from_matrix(two_states(), Matrix{{0.0, 1.0}, {1.0, 0.0}});
}

}  // namespace imc::testing
