#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "imc/errors.hpp"
#include "imc/uncertainty_model.hpp"

namespace imc {
namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

double sum_over(const std::vector<double>& v, const StateSet& set) {
  double s = 0.0;
  for (auto i : set.indices()) s += v[i];
  return s;
}

double choquet_interval(const IntervalModel& m, const Gamble& h) {
  // Walk the states from the largest value down; `above` is the level set
  // {h >= current level} and its upper probability is
  // min(sum of upper bounds on it, 1 - sum of lower bounds off it).
  const std::size_t n = h.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
  const double lower_total = std::accumulate(m.lower.begin(), m.lower.end(), 0.0);
  double up_in = 0.0, lo_in = 0.0;
  double total = h[order.back()];
  std::size_t i = 0;
  while (i < n) {
    const double level = h[order[i]];
    for (; i < n && h[order[i]] == level; ++i) {
      up_in += m.upper[order[i]];
      lo_in += m.lower[order[i]];
    }
    if (i == n) break;
    const double prob = std::min(up_in, 1.0 - (lower_total - lo_in));
    total += (level - h[order[i]]) * prob;
  }
  return total;
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::precise: return "precise";
    case ModelKind::vacuous: return "vacuous";
    case ModelKind::contamination: return "contamination";
    case ModelKind::belief: return "belief";
    case ModelKind::interval: return "interval";
    case ModelKind::polytope: return "polytope";
  }
  return "unknown";
}

UncertaintyModel UncertaintyModel::precise(MassFunction mass) {
  auto space = mass.space();
  return UncertaintyModel(std::move(space), PreciseModel{std::move(mass)});
}

UncertaintyModel UncertaintyModel::vacuous(StateSpace space) {
  return UncertaintyModel(std::move(space), VacuousModel{});
}

UncertaintyModel UncertaintyModel::contamination(double epsilon, MassFunction base) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw InvalidModelError("contamination epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  auto space = base.space();
  return UncertaintyModel(std::move(space), ContaminationModel{epsilon, std::move(base)});
}

UncertaintyModel UncertaintyModel::belief(StateSpace space, std::vector<FocalElement> focal) {
  double total = 0.0;
  std::vector<FocalElement> kept;
  for (auto& f : focal) {
    if (f.set.universe() != space.size())
      throw DimensionError("focal set universe does not match the state space");
    if (f.set.empty()) throw InvalidModelError("focal sets must be non-empty");
    if (!std::isfinite(f.mass) || f.mass < 0.0)
      throw InvalidModelError("focal masses must be finite and non-negative");
    total += f.mass;
    if (f.mass > 0.0) kept.push_back(std::move(f));
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidModelError("focal masses sum to " + std::to_string(total) + ", not 1");
  return UncertaintyModel(std::move(space), BeliefModel{std::move(kept)});
}

UncertaintyModel UncertaintyModel::interval(StateSpace space, std::vector<double> lo,
                                            std::vector<double> up, const Settings& settings) {
  const std::size_t n = space.size();
  if (lo.size() != n || up.size() != n)
    throw DimensionError("interval bounds must have one entry per state");
  const double tol = settings.tol_feas;
  for (std::size_t x = 0; x < n; ++x) {
    if (!std::isfinite(lo[x]) || !std::isfinite(up[x]))
      throw InvalidModelError("interval bounds must be finite");
    if (lo[x] < -tol || up[x] > 1.0 + tol || lo[x] > up[x] + tol)
      throw InvalidModelError("interval bounds for state '" + space.label(x) +
                              "' must satisfy 0 <= lower <= upper <= 1");
    lo[x] = std::clamp(lo[x], 0.0, 1.0);
    up[x] = std::clamp(up[x], lo[x], 1.0);
  }
  const double sum_lo = std::accumulate(lo.begin(), lo.end(), 0.0);
  const double sum_up = std::accumulate(up.begin(), up.end(), 0.0);
  if (sum_lo > 1.0 + tol)
    throw InvalidModelError("lower masses sum to " + std::to_string(sum_lo) + " > 1");
  if (sum_up < 1.0 - tol)
    throw InvalidModelError("upper masses sum to " + std::to_string(sum_up) + " < 1");

  // Reachability: one tightening pass against the original bounds suffices.
  // Changes below the positivity threshold are rounding noise in the sums.
  std::vector<double> tl(lo), tu(up);
  for (std::size_t x = 0; x < n; ++x) {
    const double floor = 1.0 - (sum_up - up[x]);
    const double ceiling = 1.0 - (sum_lo - lo[x]);
    if (floor > lo[x] + settings.positivity) tl[x] = std::min(floor, 1.0);
    if (ceiling < up[x] - settings.positivity) tu[x] = std::max(ceiling, 0.0);
    if (tu[x] < tl[x]) tu[x] = tl[x];
  }
  return UncertaintyModel(std::move(space), IntervalModel{std::move(tl), std::move(tu)});
}

UncertaintyModel UncertaintyModel::polytope(CredalPolytope region) {
  auto space = region.space();
  return UncertaintyModel(std::move(space), PolytopeModel{std::move(region)});
}

double interval_upper_probability(const IntervalModel& m, const StateSet& event) {
  return std::min(sum_over(m.upper, event), 1.0 - sum_over(m.lower, event.complement()));
}

double upper(const UncertaintyModel& model, const Gamble& h) {
  require_same_space(model.space(), h.space(), "upper expectation");
  return std::visit(
      Overload{
          [&](const PreciseModel& m) { return expectation(m.mass, h); },
          [&](const VacuousModel&) { return h.max(); },
          [&](const ContaminationModel& m) {
            return (1.0 - m.epsilon) * expectation(m.base, h) + m.epsilon * h.max();
          },
          [&](const BeliefModel& m) {
            double s = 0.0;
            for (const auto& f : m.focal) {
              double best = -INFINITY;
              for (auto x : f.set.indices()) best = std::max(best, h[x]);
              s += f.mass * best;
            }
            return s;
          },
          [&](const IntervalModel& m) { return choquet_interval(m, h); },
          [&](const PolytopeModel& m) { return upper_expectation_lp(m.region, h); },
      },
      model.variant());
}

double lower(const UncertaintyModel& model, const Gamble& h) { return -upper(model, -h); }

CredalPolytope as_polytope(const UncertaintyModel& model, const Settings& settings) {
  const auto& space = model.space();
  const std::size_t n = space.size();
  auto unit = [&](std::size_t x, double sign) {
    std::vector<double> g(n, 0.0);
    g[x] = sign;
    return Gamble(space, std::move(g));
  };
  return std::visit(
      Overload{
          [&](const PreciseModel& m) {
            std::vector<Halfspace> hs;
            for (std::size_t x = 0; x < n; ++x)
              if (m.mass[x] < 1.0) hs.push_back({unit(x, 1.0), m.mass[x]});
            return CredalPolytope(space, std::move(hs), settings);
          },
          [&](const VacuousModel&) { return CredalPolytope(space, {}, settings); },
          [&](const ContaminationModel& m) {
            std::vector<Halfspace> hs;
            for (std::size_t x = 0; x < n; ++x) {
              const double floor = (1.0 - m.epsilon) * m.base[x];
              if (floor > 0.0) hs.push_back({unit(x, -1.0), -floor});
            }
            return CredalPolytope(space, std::move(hs), settings);
          },
          [&](const BeliefModel& m) {
            // m(A) <= Pl(A) for every event whose plausibility is below 1.
            std::vector<Halfspace> hs;
            if (n > 20) throw SizeCapError("belief polytope limited to 20 states");
            const std::size_t events = std::size_t{1} << n;
            for (std::size_t mask = 1; mask + 1 < events; ++mask) {
              StateSet a(n);
              for (std::size_t x = 0; x < n; ++x)
                if (mask & (std::size_t{1} << x)) a.insert(x);
              double pl = 0.0;
              for (const auto& f : m.focal)
                if (!(f.set & a).empty()) pl += f.mass;
              if (pl < 1.0) hs.push_back({Gamble::indicator(space, a), pl});
            }
            return CredalPolytope(space, std::move(hs), settings);
          },
          [&](const IntervalModel& m) {
            std::vector<Halfspace> hs;
            for (std::size_t x = 0; x < n; ++x) {
              if (m.upper[x] < 1.0) hs.push_back({unit(x, 1.0), m.upper[x]});
              if (m.lower[x] > 0.0) hs.push_back({unit(x, -1.0), -m.lower[x]});
            }
            return CredalPolytope(space, std::move(hs), settings);
          },
          [&](const PolytopeModel& m) { return m.region; },
      },
      model.variant());
}

StateSet upper_support(const UncertaintyModel& model, const Settings& settings) {
  const std::size_t n = model.space().size();
  return std::visit(
      Overload{
          [&](const PreciseModel& m) { return m.mass.support(); },
          [&](const VacuousModel&) { return StateSet::all(n); },
          [&](const ContaminationModel& m) {
            return m.epsilon > 0.0 ? StateSet::all(n) : m.base.support();
          },
          [&](const BeliefModel& m) {
            StateSet s(n);
            for (const auto& f : m.focal) s = s | f.set;
            return s;
          },
          [&](const IntervalModel& m) {
            StateSet s(n);
            const double sum_lo = std::accumulate(m.lower.begin(), m.lower.end(), 0.0);
            for (std::size_t x = 0; x < n; ++x) {
              const double rest = 1.0 - (sum_lo - m.lower[x]);
              const bool positive = m.upper[x] <= rest ? m.upper[x] > 0.0 : rest > settings.positivity;
              if (positive) s.insert(x);
            }
            return s;
          },
          [&](const PolytopeModel& m) {
            StateSet s(n);
            for (const auto& v : m.region.vertices()) s = s | v.support();
            return s;
          },
      },
      model.variant());
}

bool lower_hits(const UncertaintyModel& model, const StateSet& event, const Settings& settings) {
  if (event.universe() != model.space().size())
    throw DimensionError("event universe does not match the model's state space");
  if (event.empty()) throw ArgumentError("lower_hits needs a non-empty event");
  return std::visit(
      Overload{
          [&](const PreciseModel& m) { return !(m.mass.support() & event).empty(); },
          [&](const VacuousModel&) { return event.is_full(); },
          [&](const ContaminationModel& m) {
            return event.is_full() || (m.epsilon < 1.0 && !(m.base.support() & event).empty());
          },
          [&](const BeliefModel& m) {
            return std::any_of(m.focal.begin(), m.focal.end(),
                               [&](const FocalElement& f) { return f.set.is_subset_of(event); });
          },
          [&](const IntervalModel& m) {
            for (auto x : event.indices())
              if (m.lower[x] > 0.0) return true;
            return 1.0 - sum_over(m.upper, event.complement()) > settings.positivity;
          },
          [&](const PolytopeModel& m) {
            return std::all_of(m.region.vertices().begin(), m.region.vertices().end(),
                               [&](const MassFunction& v) { return !(v.support() & event).empty(); });
          },
      },
      model.variant());
}

}  // namespace imc
