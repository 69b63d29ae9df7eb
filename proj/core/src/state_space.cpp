#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "imc/errors.hpp"
#include "imc/gamble.hpp"
#include "imc/matrix.hpp"
#include "imc/state_space.hpp"

namespace imc {

struct StateSpace::Impl {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
};

StateSpace::StateSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw ArgumentError("state space must contain at least one state");
  auto impl = std::make_shared<Impl>();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!impl->index.emplace(labels[i], i).second)
      throw ArgumentError("duplicate state label '" + labels[i] + "'");
  }
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

StateSpace::StateSpace(std::initializer_list<std::string_view> labels)
    : StateSpace(std::vector<std::string>(labels.begin(), labels.end())) {}

StateSpace StateSpace::numbered(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return StateSpace(std::move(labels));
}

std::size_t StateSpace::size() const noexcept { return impl_->labels.size(); }
const std::string& StateSpace::label(std::size_t i) const { return impl_->labels.at(i); }
const std::vector<std::string>& StateSpace::labels() const noexcept { return impl_->labels; }

bool operator==(const StateSpace& a, const StateSpace& b) noexcept {
  return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
}

std::size_t StateSpace::index(std::string_view label) const {
  auto it = impl_->index.find(std::string(label));
  if (it == impl_->index.end()) throw ArgumentError("unknown state '" + std::string(label) + "'");
  return it->second;
}

bool StateSpace::contains(std::string_view label) const noexcept {
  return impl_->index.count(std::string(label)) != 0;
}

void require_same_space(const StateSpace& a, const StateSpace& b, const char* what) {
  if (!(a == b))
    throw DimensionError(std::string(what) + ": operands are defined on different state spaces");
}

// StateSet

StateSet::StateSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : members_(universe, false) {
  for (auto i : members) insert(i);
}

StateSet StateSet::of(const StateSpace& space, std::initializer_list<std::string_view> labels) {
  StateSet s(space.size());
  for (auto l : labels) s.insert(space.index(l));
  return s;
}

std::size_t StateSet::count() const noexcept {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<std::size_t> StateSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(i);
  return out;
}

StateSet StateSet::complement() const {
  StateSet s(universe());
  for (std::size_t i = 0; i < members_.size(); ++i) s.members_[i] = !members_[i];
  return s;
}

StateSet StateSet::operator|(const StateSet& other) const {
  if (universe() != other.universe()) throw DimensionError("state sets of different universes");
  StateSet s(universe());
  for (std::size_t i = 0; i < members_.size(); ++i) s.members_[i] = members_[i] || other.members_[i];
  return s;
}

StateSet StateSet::operator&(const StateSet& other) const {
  if (universe() != other.universe()) throw DimensionError("state sets of different universes");
  StateSet s(universe());
  for (std::size_t i = 0; i < members_.size(); ++i) s.members_[i] = members_[i] && other.members_[i];
  return s;
}

bool StateSet::is_subset_of(const StateSet& other) const {
  if (universe() != other.universe()) throw DimensionError("state sets of different universes");
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] && !other.members_[i]) return false;
  return true;
}

// Gamble

Gamble::Gamble(StateSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw DimensionError("gamble has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(space_.size()) + " states");
  for (double v : values_)
    if (!std::isfinite(v)) throw ArgumentError("gamble values must be finite");
}

Gamble Gamble::constant(const StateSpace& space, double value) {
  return Gamble(space, std::vector<double>(space.size(), value));
}

Gamble Gamble::indicator(const StateSpace& space, const StateSet& event) {
  if (event.universe() != space.size()) throw DimensionError("event universe does not match space");
  std::vector<double> v(space.size(), 0.0);
  for (auto i : event.indices()) v[i] = 1.0;
  return Gamble(space, std::move(v));
}

Gamble Gamble::indicator(const StateSpace& space, std::size_t state) {
  std::vector<double> v(space.size(), 0.0);
  v.at(state) = 1.0;
  return Gamble(space, std::move(v));
}

double Gamble::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Gamble::max() const { return *std::max_element(values_.begin(), values_.end()); }

double Gamble::distance(const Gamble& other) const {
  require_same_space(space_, other.space_, "gamble distance");
  double d = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    d = std::max(d, std::abs(values_[i] - other.values_[i]));
  return d;
}

Gamble Gamble::operator-() const { return *this * -1.0; }

Gamble Gamble::operator+(const Gamble& other) const {
  require_same_space(space_, other.space_, "gamble sum");
  Gamble out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] += other.values_[i];
  return out;
}

Gamble Gamble::operator-(const Gamble& other) const { return *this + (-other); }

Gamble Gamble::operator+(double shift) const {
  Gamble out = *this;
  for (double& v : out.values_) v += shift;
  return out;
}

Gamble Gamble::operator*(double scale) const {
  Gamble out = *this;
  for (double& v : out.values_) v *= scale;
  return out;
}

// MassFunction

MassFunction::MassFunction(StateSpace space, std::vector<double> probabilities,
                           const Settings& settings)
    : space_(std::move(space)), p_(std::move(probabilities)) {
  if (p_.size() != space_.size())
    throw DimensionError("mass function has " + std::to_string(p_.size()) + " entries for " +
                         std::to_string(space_.size()) + " states");
  double total = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v)) throw ArgumentError("mass function entries must be finite");
    if (v < -settings.tol_feas) throw ArgumentError("mass function has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > settings.tol_feas)
    throw ArgumentError("mass function entries sum to " + std::to_string(total) + ", not 1");
  for (double& v : p_) v = std::max(v, 0.0);
  total = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (total != 1.0)
    for (double& v : p_) v /= total;
}

MassFunction MassFunction::point(const StateSpace& space, std::size_t state) {
  std::vector<double> p(space.size(), 0.0);
  p.at(state) = 1.0;
  return MassFunction(space, std::move(p));
}

MassFunction MassFunction::uniform(const StateSpace& space) {
  return MassFunction(space, std::vector<double>(space.size(), 1.0 / double(space.size())));
}

double MassFunction::probability(const StateSet& event) const {
  if (event.universe() != p_.size()) throw DimensionError("event universe does not match space");
  double s = 0.0;
  for (auto i : event.indices()) s += p_[i];
  return s;
}

StateSet MassFunction::support() const {
  StateSet s(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i)
    if (p_[i] > 0.0) s.insert(i);
  return s;
}

double expectation(const MassFunction& m, const Gamble& h) {
  require_same_space(m.space(), h.space(), "expectation");
  double s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * h[i];
  return s;
}

// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initialiser");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix product size mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

std::vector<double> Matrix::operator*(std::span<const double> v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

bool Matrix::is_stochastic(double tol) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) < -tol) return false;
      s += (*this)(i, j);
    }
    if (std::abs(s - 1.0) > tol) return false;
  }
  return true;
}

double Matrix::max_abs_diff(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - other.data_[i]));
  return d;
}

}  // namespace imc
