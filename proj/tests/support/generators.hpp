#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "imc/imc.hpp"

namespace imc::testing {

using Rng = std::mt19937_64;

inline constexpr ModelKind kAllKinds[] = {ModelKind::precise, ModelKind::vacuous,
                                          ModelKind::contamination, ModelKind::belief,
                                          ModelKind::interval, ModelKind::polytope};

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random mass function; with probability `zero_chance` each entry is forced
/// to zero (at least one entry stays positive).
inline MassFunction random_mass(const StateSpace& space, Rng& rng, double zero_chance = 0.2) {
  std::vector<double> p(space.size());
  std::exponential_distribution<double> exp(1.0);
  double sum = 0.0;
  for (auto& v : p) {
    v = uniform(rng) < zero_chance ? 0.0 : exp(rng);
    sum += v;
  }
  if (sum == 0.0) {
    p[pick(rng, 0, p.size() - 1)] = 1.0;
    sum = 1.0;
  }
  for (auto& v : p) v /= sum;
  return MassFunction(space, std::move(p));
}

/// Values in [-5, 5]; with probability 1/4 rounded to integers so ties occur.
inline Gamble random_gamble(const StateSpace& space, Rng& rng) {
  const bool ties = uniform(rng) < 0.25;
  std::vector<double> v(space.size());
  for (auto& x : v) {
    x = uniform(rng, -5.0, 5.0);
    if (ties) x = std::round(x);
  }
  return Gamble(space, std::move(v));
}

inline Gamble random_nonnegative(const StateSpace& space, Rng& rng) {
  std::vector<double> v(space.size());
  for (auto& x : v) x = uniform(rng) < 0.3 ? 0.0 : uniform(rng);
  return Gamble(space, std::move(v));
}

inline UncertaintyModel random_interval(const StateSpace& space, Rng& rng) {
  const auto m = random_mass(space, rng, 0.3);
  std::vector<double> lo(space.size()), up(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    lo[x] = uniform(rng) < 0.3 ? 0.0 : std::max(0.0, m[x] - uniform(rng, 0.0, 0.3));
    up[x] = uniform(rng) < 0.2 ? m[x] : std::min(1.0, m[x] + uniform(rng, 0.0, 0.3));
  }
  return UncertaintyModel::interval(space, std::move(lo), std::move(up));
}

inline UncertaintyModel random_belief(const StateSpace& space, Rng& rng) {
  const std::size_t n = space.size();
  const std::size_t count = pick(rng, 1, 4);
  std::vector<FocalElement> focal;
  std::vector<double> w(count);
  double sum = 0.0;
  for (auto& x : w) sum += (x = uniform(rng, 0.05, 1.0));
  for (std::size_t j = 0; j < count; ++j) {
    StateSet s(n);
    for (std::size_t x = 0; x < n; ++x)
      if (uniform(rng) < 0.4) s.insert(x);
    if (s.empty()) s.insert(pick(rng, 0, n - 1));
    focal.push_back({s, w[j] / sum});
  }
  return UncertaintyModel::belief(space, std::move(focal));
}

/// Random halfspaces E_m(g) <= E_c(g) + slack around a random centre c.
inline UncertaintyModel random_polytope(const StateSpace& space, Rng& rng) {
  const auto centre = random_mass(space, rng, 0.0);
  std::vector<Halfspace> hs;
  const std::size_t count = pick(rng, 1, 4);
  for (std::size_t j = 0; j < count; ++j) {
    Gamble g = random_gamble(space, rng);
    hs.push_back({g, expectation(centre, g) + uniform(rng, 0.0, 1.0)});
  }
  return UncertaintyModel::polytope(CredalPolytope(space, std::move(hs)));
}

inline UncertaintyModel random_model(const StateSpace& space, ModelKind kind, Rng& rng) {
  switch (kind) {
    case ModelKind::precise: return UncertaintyModel::precise(random_mass(space, rng));
    case ModelKind::vacuous: return UncertaintyModel::vacuous(space);
    case ModelKind::contamination:
      return UncertaintyModel::contamination(uniform(rng) < 0.1 ? 0.0 : uniform(rng),
                                             random_mass(space, rng));
    case ModelKind::belief: return random_belief(space, rng);
    case ModelKind::interval: return random_interval(space, rng);
    case ModelKind::polytope: return random_polytope(space, rng);
  }
  return UncertaintyModel::vacuous(space);
}

inline ModelKind random_kind(Rng& rng) { return kAllKinds[pick(rng, 0, 5)]; }

/// Operator whose rows are all of `kind`.
inline UpperTransitionOperator random_operator(const StateSpace& space, ModelKind kind, Rng& rng) {
  std::vector<UncertaintyModel> rows;
  for (std::size_t x = 0; x < space.size(); ++x) rows.push_back(random_model(space, kind, rng));
  return UpperTransitionOperator(space, std::move(rows));
}

/// Operator with independently drawn row kinds.
inline UpperTransitionOperator random_mixed_operator(const StateSpace& space, Rng& rng) {
  std::vector<UncertaintyModel> rows;
  for (std::size_t x = 0; x < space.size(); ++x) rows.push_back(random_model(space, random_kind(rng), rng));
  return UpperTransitionOperator(space, std::move(rows));
}

inline Matrix random_stochastic(std::size_t n, Rng& rng, double zero_chance = 0.0) {
  const auto space = StateSpace::numbered(n);
  Matrix t(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    auto m = random_mass(space, rng, zero_chance);
    for (std::size_t y = 0; y < n; ++y) t(x, y) = m[y];
  }
  return t;
}

}  // namespace imc::testing
