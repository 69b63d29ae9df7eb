#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "imc/imc.hpp"

namespace imc::cli {

/// Singleton bounds of one time step of a trajectory.
struct TrajectoryStep {
  std::size_t n;
  std::vector<Bounds> singleton;
};

/// Ternary plot of a three-state space: the simplex outline, corner labels
/// and, for each step, the polygon {m : lower(x) <= m(x) <= upper(x)}.
/// Throws ArgumentError unless the space has exactly three states.
std::string ternary_svg(const StateSpace& space, const std::vector<TrajectoryStep>& steps,
                        const Settings& settings = kDefaultSettings);

}  // namespace imc::cli
