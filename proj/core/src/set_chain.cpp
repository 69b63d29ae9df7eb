#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "imc/errors.hpp"
#include "imc/polytope.hpp"
#include "imc/set_chain.hpp"

namespace imc {

namespace {

std::vector<MassFunction> row_vertices(const UncertaintyModel& row, const Settings& settings) {
  const StateSpace& space = row.space();
  switch (row.kind()) {
    case ModelKind::precise:
      return {row.as<PreciseModel>().mass};
    case ModelKind::contamination: {
      const auto& c = row.as<ContaminationModel>();
      if (c.epsilon == 0.0) return {c.base};
      std::vector<MassFunction> out;
      for (std::size_t x = 0; x < space.size(); ++x) {
        std::vector<double> p(space.size());
        for (std::size_t y = 0; y < space.size(); ++y) p[y] = (1.0 - c.epsilon) * c.base[y];
        p[x] += c.epsilon;
        MassFunction m(space, std::move(p), settings);
        bool duplicate = std::any_of(out.begin(), out.end(), [&](const MassFunction& v) {
          for (std::size_t y = 0; y < space.size(); ++y)
            if (std::abs(v[y] - m[y]) > settings.dedup) return false;
          return true;
        });
        if (!duplicate) out.push_back(std::move(m));
      }
      return out;
    }
    default:
      return as_polytope(row, settings).vertices();
  }
}

}  // namespace

MatrixSet extreme_matrices(const UpperTransitionOperator& op, const Settings& settings) {
  const std::size_t n = op.size();
  MatrixSet set{op.space(), {}, {}};
  double total = 1.0;
  for (std::size_t x = 0; x < n; ++x) {
    set.row_vertices.push_back(row_vertices(op.row(x), settings));
    total *= static_cast<double>(set.row_vertices.back().size());
    if (total > settings.matrix_cap)
      throw SizeCapError("extreme matrix count exceeds the cap of " +
                         std::to_string(static_cast<long long>(settings.matrix_cap)));
  }
  // Odometer over per-row vertex choices; the last row varies fastest.
  std::vector<std::size_t> choice(n, 0);
  set.matrices.reserve(static_cast<std::size_t>(total));
  while (true) {
    Matrix m(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) m(x, y) = set.row_vertices[x][choice[x]][y];
    set.matrices.push_back(std::move(m));
    std::size_t x = n;
    while (x > 0) {
      --x;
      if (++choice[x] < set.row_vertices[x].size()) break;
      choice[x] = 0;
      if (x == 0) return set;
    }
  }
}

std::pair<Gamble, Gamble> product_envelopes(const MatrixSet& set, const Gamble& h, std::size_t n,
                                            const Settings& settings) {
  require_same_space(set.space, h.space(), "matrix set");
  if (n == 0) throw ArgumentError("product length must be at least 1");
  if (set.matrices.empty()) throw ArgumentError("matrix set is empty");
  if (static_cast<double>(set.size()) * static_cast<double>(n) > settings.product_cap)
    throw SizeCapError("matrix product search of " + std::to_string(set.size()) + " matrices times " +
                       std::to_string(n) + " steps exceeds the cap");
  const std::size_t size = h.size();
  std::vector<double> hi(h.values().begin(), h.values().end());
  std::vector<double> lo = hi;
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<double> nhi(size, -std::numeric_limits<double>::infinity());
    std::vector<double> nlo(size, std::numeric_limits<double>::infinity());
    for (const auto& t : set.matrices) {
      auto up = t * std::span<const double>(hi);
      auto down = t * std::span<const double>(lo);
      for (std::size_t x = 0; x < size; ++x) {
        nhi[x] = std::max(nhi[x], up[x]);
        nlo[x] = std::min(nlo[x], down[x]);
      }
    }
    hi = std::move(nhi);
    lo = std::move(nlo);
  }
  return {Gamble(set.space, std::move(lo)), Gamble(set.space, std::move(hi))};
}

Bounds max_product_expectation(const MatrixSet& set, const Gamble& h, std::size_t n, std::size_t x,
                               const Settings& settings) {
  if (x >= set.space.size()) throw DimensionError("state index out of range");
  auto [lo, hi] = product_envelopes(set, h, n, settings);
  return {lo[x], hi[x]};
}

double ergodicity_coefficient(const Matrix& m) {
  if (m.rows() != m.cols() || !m.is_stochastic(1e-9))
    throw ArgumentError("ergodicity coefficient needs a square row-stochastic matrix");
  double tau = 0.0;
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = x + 1; y < m.rows(); ++y) {
      double d = 0.0;
      for (std::size_t z = 0; z < m.cols(); ++z) d += std::abs(m(x, z) - m(y, z));
      tau = std::max(tau, 0.5 * d);
    }
  return std::min(tau, 1.0);
}

std::string_view to_string(ScramblingKind kind) noexcept {
  switch (kind) {
    case ScramblingKind::scrambling_at: return "scrambling_at";
    case ScramblingKind::not_scrambling_witness: return "not_scrambling_witness";
    case ScramblingKind::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

// Support pattern of a matrix on at most 8 states: byte x holds row x.
using Pattern = std::uint64_t;

std::uint8_t row_of(Pattern p, std::size_t x) { return static_cast<std::uint8_t>(p >> (8 * x)); }

Pattern pattern_of(const Matrix& m) {
  Pattern p = 0;
  for (std::size_t x = 0; x < m.rows(); ++x)
    for (std::size_t y = 0; y < m.cols(); ++y)
      if (m(x, y) > 0.0) p |= Pattern{1} << (8 * x + y);
  return p;
}

Pattern multiply(Pattern a, Pattern b, std::size_t n) {
  Pattern out = 0;
  for (std::size_t x = 0; x < n; ++x) {
    std::uint8_t row = 0;
    std::uint8_t ra = row_of(a, x);
    for (std::size_t z = 0; z < n; ++z)
      if (ra & (1u << z)) row |= row_of(b, z);
    out |= Pattern{row} << (8 * x);
  }
  return out;
}

bool scrambling(Pattern p, std::size_t n) {
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if ((row_of(p, x) & row_of(p, y)) == 0) return false;
  return true;
}

int diagonal_count(Pattern p, std::size_t n) {
  int c = 0;
  for (std::size_t x = 0; x < n; ++x) c += (row_of(p, x) >> x) & 1u;
  return c;
}

Matrix to_matrix(Pattern p, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m(x, y) = (row_of(p, x) >> y) & 1u ? 1.0 : 0.0;
  return m;
}

}  // namespace

ScramblingVerdict product_scrambling_check(const MatrixSet& set, std::size_t m_max,
                                           const Settings& settings) {
  const std::size_t n = set.space.size();
  if (m_max == 0) throw ArgumentError("m_max must be at least 1");
  if (n > 8) throw SizeCapError("scrambling check supports at most 8 states");
  if (set.matrices.empty()) throw ArgumentError("matrix set is empty");

  // One factor list per distinct pattern, kept for witnesses.
  std::map<Pattern, std::vector<std::size_t>> base;
  for (std::size_t i = 0; i < set.size(); ++i) base.try_emplace(pattern_of(set.matrices[i]), std::vector{i});

  ScramblingVerdict verdict;
  std::map<Pattern, std::vector<std::size_t>> current = base;
  std::set<std::set<Pattern>> seen;
  for (std::size_t m = 1;; ++m) {
    verdict.m = m;
    const std::pair<const Pattern, std::vector<std::size_t>>* witness = nullptr;
    std::set<Pattern> keys;
    for (const auto& entry : current) {
      keys.insert(entry.first);
      if (scrambling(entry.first, n)) continue;
      if (!witness || diagonal_count(entry.first, n) > diagonal_count(witness->first, n)) witness = &entry;
    }
    if (!witness) {
      verdict.kind = ScramblingKind::scrambling_at;
      verdict.witness_factors.clear();
      verdict.witness_pattern.reset();
      return verdict;
    }
    verdict.witness_factors = witness->second;
    verdict.witness_pattern = to_matrix(witness->first, n);
    // Every later pattern set is one already seen, each holding a
    // non-scrambling pattern.
    if (!seen.insert(keys).second) {
      verdict.kind = ScramblingKind::not_scrambling_witness;
      verdict.proven_for_all_m = true;
      return verdict;
    }
    if (m == m_max) {
      verdict.kind = ScramblingKind::inconclusive;
      return verdict;
    }
    std::map<Pattern, std::vector<std::size_t>> next;
    for (const auto& [p, factors] : current)
      for (const auto& [q, tail] : base) {
        Pattern r = multiply(p, q, n);
        if (next.count(r)) continue;
        auto f = factors;
        f.push_back(tail.front());
        next.emplace(r, std::move(f));
        if (static_cast<double>(next.size()) > settings.pattern_cap)
          throw SizeCapError("support pattern set exceeds the cap");
      }
    current = std::move(next);
  }
}

StrictInclusionReport strict_inclusion_analysis(double epsilon, std::size_t grid) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw ArgumentError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  if (grid == 0) throw ArgumentError("grid must have at least one interval");
  StrictInclusionReport r;
  r.epsilon = epsilon;
  r.delta = epsilon * (2.0 - epsilon);

  // Membership of the delta matrix in the two-step set, checked against the
  // squared operator's lower and upper transition probabilities.
  const StateSpace space({"a", "b"});
  const auto op = UpperTransitionOperator::contaminated(space, Matrix::identity(2), epsilon);
  const Matrix target{{1.0 - r.delta, r.delta}, {r.delta, 1.0 - r.delta}};
  r.in_two_step_set = true;
  for (std::size_t y = 0; y < 2; ++y) {
    Gamble ind = Gamble::indicator(space, y);
    Gamble up = power_apply(op, ind, 2, Side::upper);
    Gamble lo = power_apply(op, ind, 2, Side::lower);
    for (std::size_t x = 0; x < 2; ++x)
      if (target(x, y) > up[x] + 1e-12 || target(x, y) < lo[x] - 1e-12) r.in_two_step_set = false;
  }

  // Off-diagonal entries of T(e1, e2) T(e3, e4):
  //   row a: e1 + e3 - e1 e3 - e1 e4,   row b: e2 + e4 - e2 e4 - e2 e3.
  // Each is linear in its own first-factor parameter, so its maximum sits at 0 or eps.
  const double step = epsilon / static_cast<double>(grid);
  double best = 0.0;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double e3 = step * static_cast<double>(i);
    for (std::size_t j = 0; j <= grid; ++j) {
      const double e4 = step * static_cast<double>(j);
      const double fa = std::max(e3, epsilon + e3 - epsilon * e3 - epsilon * e4);
      const double fb = std::max(e4, epsilon + e4 - epsilon * e4 - epsilon * e3);
      best = std::max(best, std::min(fa, fb));
    }
  }
  r.best_product_bound = best + 2.0 * step;
  r.strictly_contained = r.delta > 0.0 && r.in_two_step_set && r.best_product_bound < r.delta;
  return r;
}

bool strict_inclusion_demo(double epsilon) {
  std::size_t grid = 400;
  auto report = strict_inclusion_analysis(epsilon, grid);
  // Refine near eps = 1, where the gap below delta becomes small.
  while (!report.strictly_contained && report.delta > 0.0 && epsilon < 1.0 && grid < 25600) {
    grid *= 4;
    report = strict_inclusion_analysis(epsilon, grid);
  }
  return report.strictly_contained;
}

}  // namespace imc
