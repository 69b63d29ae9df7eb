#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace imc {

/// An ordered, finite set of distinct state labels. Every vector and matrix
/// in the library is indexed by this order. Copies share the label table.
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels);
  StateSpace(std::initializer_list<std::string_view> labels);

  /// States "0", "1", ..., "n-1".
  static StateSpace numbered(std::size_t n);

  std::size_t size() const noexcept;
  const std::string& label(std::size_t i) const;
  const std::vector<std::string>& labels() const noexcept;

  /// Index of a label; throws ArgumentError for unknown labels.
  std::size_t index(std::string_view label) const;
  bool contains(std::string_view label) const noexcept;

  friend bool operator==(const StateSpace& a, const StateSpace& b) noexcept;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Throws DimensionError naming `what` when the two spaces differ.
void require_same_space(const StateSpace& a, const StateSpace& b, const char* what);

/// A subset of a state space, stored as a membership mask.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : members_(universe, false) {}
  StateSet(std::size_t universe, std::initializer_list<std::size_t> members);

  static StateSet all(std::size_t universe) {
    StateSet s(universe);
    s.members_.assign(universe, true);
    return s;
  }
  static StateSet of(const StateSpace& space, std::initializer_list<std::string_view> labels);

  std::size_t universe() const noexcept { return members_.size(); }
  bool contains(std::size_t i) const { return members_.at(i); }
  void insert(std::size_t i) { members_.at(i) = true; }
  void erase(std::size_t i) { members_.at(i) = false; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }
  bool is_full() const noexcept { return count() == members_.size(); }
  std::vector<std::size_t> indices() const;

  StateSet complement() const;
  StateSet operator|(const StateSet& other) const;
  StateSet operator&(const StateSet& other) const;
  bool is_subset_of(const StateSet& other) const;

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet& a, const StateSet& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<bool> members_;
};

}  // namespace imc
