#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "imc/settings.hpp"
#include "imc/state_space.hpp"

namespace imc {

/// A real-valued map on a finite state space.
class Gamble {
 public:
  /// Throws DimensionError on size mismatch, ArgumentError on non-finite values.
  Gamble(StateSpace space, std::vector<double> values);

  static Gamble zero(const StateSpace& space) { return constant(space, 0.0); }
  static Gamble constant(const StateSpace& space, double value);
  static Gamble indicator(const StateSpace& space, const StateSet& event);
  static Gamble indicator(const StateSpace& space, std::size_t state);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::string_view label) const { return values_.at(space_.index(label)); }
  std::span<const double> values() const noexcept { return values_; }

  double min() const;
  double max() const;
  /// Sup-norm of the difference.
  double distance(const Gamble& other) const;

  Gamble operator-() const;
  Gamble operator+(const Gamble& other) const;
  Gamble operator-(const Gamble& other) const;
  Gamble operator+(double shift) const;
  Gamble operator-(double shift) const { return *this + (-shift); }
  Gamble operator*(double scale) const;
  friend Gamble operator*(double scale, const Gamble& g) { return g * scale; }

  friend bool operator==(const Gamble&, const Gamble&) = default;

 private:
  StateSpace space_;
  std::vector<double> values_;
};

/// A probability mass function. Entries within tol_feas of zero are clamped
/// and the vector is renormalised so the stored masses are exactly
/// non-negative.
class MassFunction {
 public:
  MassFunction(StateSpace space, std::vector<double> probabilities,
               const Settings& settings = kDefaultSettings);

  static MassFunction point(const StateSpace& space, std::size_t state);
  static MassFunction uniform(const StateSpace& space);

  const StateSpace& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  double at(std::string_view label) const { return p_.at(space_.index(label)); }
  std::span<const double> probabilities() const noexcept { return p_; }

  double probability(const StateSet& event) const;
  StateSet support() const;

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  StateSpace space_;
  std::vector<double> p_;
};

/// A lower/upper pair of expectations or probabilities.
struct Bounds {
  double lower;
  double upper;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Sum over states of m(x) h(x).
double expectation(const MassFunction& m, const Gamble& h);

}  // namespace imc
