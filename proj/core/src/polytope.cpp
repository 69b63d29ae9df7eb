#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "imc/errors.hpp"
#include "imc/polytope.hpp"

namespace imc {
namespace {

// Row form a . m <= b of one inequality.
struct Row {
  std::vector<double> a;
  double b;
};

std::vector<Row> inequality_rows(const StateSpace& space, const std::vector<Halfspace>& halfspaces) {
  const std::size_t n = space.size();
  std::vector<Row> rows;
  rows.reserve(n + halfspaces.size());
  for (std::size_t i = 0; i < n; ++i) {
    Row r{std::vector<double>(n, 0.0), 0.0};
    r.a[i] = -1.0;
    rows.push_back(std::move(r));
  }
  for (const auto& h : halfspaces) {
    require_same_space(space, h.coefficients.space(), "halfspace");
    rows.push_back({std::vector<double>(h.coefficients.values().begin(), h.coefficients.values().end()),
                    h.bound});
  }
  return rows;
}

bool feasible(const std::vector<Row>& rows, const Eigen::VectorXd& m, double tol) {
  for (const auto& r : rows) {
    double s = 0.0;
    for (std::size_t j = 0; j < r.a.size(); ++j) s += r.a[j] * m[Eigen::Index(j)];
    // Scale the tolerance with the constraint's magnitude.
    double scale = 1.0;
    for (double v : r.a) scale = std::max(scale, std::abs(v));
    if (s > r.b + tol * scale) return false;
  }
  return true;
}

// Calls visit(indices) for every k-subset of {0..total-1}, in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t total, std::size_t k, Visit&& visit) {
  if (k > total) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == total - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<MassFunction> vertices_of_rows(const StateSpace& space, const std::vector<Row>& rows,
                                           const Settings& settings) {
  const std::size_t n = space.size();
  std::vector<Eigen::VectorXd> found;

  auto keep = [&](Eigen::VectorXd m) {
    if (!feasible(rows, m, settings.tol_feas)) return;
    for (const auto& f : found)
      if ((f - m).cwiseAbs().maxCoeff() <= settings.dedup) return;
    found.push_back(std::move(m));
  };

  if (n == 1) {
    keep(Eigen::VectorXd::Ones(1));
  } else {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
    for_each_subset(rows.size(), n - 1, [&](const std::vector<std::size_t>& active) {
      for (std::size_t r = 0; r + 1 < n; ++r) {
        const Row& row = rows[active[r]];
        for (std::size_t j = 0; j < n; ++j) a(Eigen::Index(r), Eigen::Index(j)) = row.a[j];
        rhs[Eigen::Index(r)] = row.b;
      }
      a.row(Eigen::Index(n - 1)).setOnes();
      rhs[Eigen::Index(n - 1)] = 1.0;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      lu.setThreshold(1e-11);
      if (lu.rank() < Eigen::Index(n)) return;
      keep(lu.solve(rhs));
    });
  }

  std::vector<MassFunction> out;
  out.reserve(found.size());
  for (auto& f : found) {
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) {
      double v = f[Eigen::Index(j)];
      p[j] = std::abs(v) <= settings.tol_feas ? 0.0 : v;
    }
    out.emplace_back(space, std::move(p), settings);
  }
  // Lexicographic, treating coordinates within the dedup tolerance as equal
  // so the order does not depend on rounding noise.
  std::sort(out.begin(), out.end(), [&](const MassFunction& x, const MassFunction& y) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(x[j] - y[j]) <= settings.dedup) continue;
      return x[j] < y[j];
    }
    return false;
  });
  return out;
}

// Smallest subset (up to three halfspaces) that is already infeasible on the
// simplex, for the error message.
std::string describe_infeasibility(const StateSpace& space, const std::vector<Halfspace>& hs,
                                   const Settings& settings) {
  const std::size_t limit = std::min<std::size_t>(3, hs.size());
  for (std::size_t k = 1; k <= limit; ++k) {
    std::vector<std::size_t> culprit;
    for_each_subset(hs.size(), k, [&](const std::vector<std::size_t>& idx) {
      if (!culprit.empty()) return;
      std::vector<Halfspace> subset;
      for (auto i : idx) subset.push_back(hs[i]);
      if (vertices_of_rows(space, inequality_rows(space, subset), settings).empty()) culprit = idx;
    });
    if (!culprit.empty()) {
      std::ostringstream os;
      os << "infeasible credal set: constraints {";
      for (std::size_t i = 0; i < culprit.size(); ++i) os << (i ? ", " : "") << culprit[i];
      os << "} have no common mass function";
      return os.str();
    }
  }
  return "infeasible credal set: the " + std::to_string(hs.size()) +
         " constraints have no common mass function";
}

}  // namespace

std::vector<MassFunction> enumerate_vertices(const StateSpace& space,
                                             const std::vector<Halfspace>& halfspaces,
                                             const Settings& settings) {
  return vertices_of_rows(space, inequality_rows(space, halfspaces), settings);
}

CredalPolytope::CredalPolytope(StateSpace space, std::vector<Halfspace> halfspaces,
                               const Settings& settings)
    : space_(std::move(space)), halfspaces_(std::move(halfspaces)) {
  vertices_ = enumerate_vertices(space_, halfspaces_, settings);
  if (vertices_.empty()) throw InfeasibleError(describe_infeasibility(space_, halfspaces_, settings));
}

CredalPolytope CredalPolytope::simplex(const StateSpace& space) { return CredalPolytope(space, {}); }

CredalPolytope CredalPolytope::hull(const StateSpace& space, const std::vector<MassFunction>& points,
                                    const Settings& settings) {
  if (points.empty()) throw InfeasibleError("convex hull of no points is empty");
  const auto n = Eigen::Index(space.size());
  const auto p = Eigen::Index(points.size());
  Eigen::MatrixXd v(p, n);
  for (Eigen::Index i = 0; i < p; ++i) {
    require_same_space(space, points[std::size_t(i)].space(), "hull");
    for (Eigen::Index j = 0; j < n; ++j) v(i, j) = points[std::size_t(i)][std::size_t(j)];
  }

  // Null space of the point matrix: gambles with zero expectation under
  // every point, i.e. the equalities of the affine hull.
  auto null_space = [](const Eigen::MatrixXd& m, Eigen::Index cols) {
    if (m.rows() == 0) return Eigen::MatrixXd(Eigen::MatrixXd::Identity(cols, cols));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-10 * std::max(1.0, sv[0])) ++rank;
    return Eigen::MatrixXd(svd.matrixV().rightCols(cols - rank));
  };

  const Eigen::MatrixXd equalities = null_space(v, n);
  const Eigen::Index rank = n - equalities.cols();

  std::vector<Halfspace> hs;
  auto push = [&](Eigen::VectorXd g) {
    g /= g.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(g[j]) < 1e-14) g[j] = 0.0;
    std::vector<double> coeffs(g.data(), g.data() + n);
    Halfspace h{Gamble(space, std::move(coeffs)), 0.0};
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(std::move(h));
  };
  for (Eigen::Index c = 0; c < equalities.cols(); ++c) {
    push(equalities.col(c));
    push(-equalities.col(c));
  }

  if (rank >= 2) {
    for_each_subset(std::size_t(p), std::size_t(rank - 1), [&](const std::vector<std::size_t>& idx) {
      Eigen::MatrixXd sub(Eigen::Index(idx.size()), n);
      for (std::size_t r = 0; r < idx.size(); ++r) sub.row(Eigen::Index(r)) = v.row(Eigen::Index(idx[r]));
      Eigen::MatrixXd ns = null_space(sub, n);
      if (ns.cols() != equalities.cols() + 1) return;
      // Component orthogonal to the affine-hull equalities.
      Eigen::MatrixXd proj = ns - equalities * (equalities.transpose() * ns);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj, Eigen::ComputeThinU);
      Eigen::VectorXd g = svd.matrixU().col(0);
      Eigen::VectorXd values = v * g;
      const double tol = 1e-9;
      if (values.maxCoeff() <= tol)
        push(g);
      else if (values.minCoeff() >= -tol)
        push(-g);
    });
  }
  return CredalPolytope(space, std::move(hs), settings);
}

bool CredalPolytope::contains(const MassFunction& m, double tol) const {
  require_same_space(space_, m.space(), "polytope membership");
  for (const auto& h : halfspaces_) {
    double scale = 1.0;
    for (double c : h.coefficients.values()) scale = std::max(scale, std::abs(c));
    if (expectation(m, h.coefficients) > h.bound + tol * scale) return false;
  }
  return true;
}

double upper_expectation_lp(const CredalPolytope& p, const Gamble& h) {
  require_same_space(p.space(), h.space(), "upper expectation");
  double best = -INFINITY;
  for (const auto& v : p.vertices()) best = std::max(best, expectation(v, h));
  return best;
}

double lower_expectation_lp(const CredalPolytope& p, const Gamble& h) {
  return -upper_expectation_lp(p, -h);
}

}  // namespace imc
