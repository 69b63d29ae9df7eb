#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "imc/classify.hpp"
#include "imc/errors.hpp"

namespace imc {

SupportDigraph support_digraph(const UpperTransitionOperator& op, const Settings& settings) {
  SupportDigraph g;
  g.successors.reserve(op.size());
  for (std::size_t x = 0; x < op.size(); ++x) g.successors.push_back(upper_support(op.row(x), settings));
  return g;
}

StateSet reachable_in(const SupportDigraph& graph, std::size_t from, std::size_t n) {
  if (from >= graph.size()) throw DimensionError("state index out of range");
  const std::size_t space = graph.size();
  StateSet current(space);
  current.insert(from);
  for (std::size_t step = 0; step < n; ++step) {
    StateSet next(space);
    for (auto x : current.indices()) next = next | graph.successors[x];
    current = std::move(next);
  }
  return current;
}

bool n_step_accessible(const SupportDigraph& graph, std::size_t x, std::size_t y, std::size_t n) {
  if (y >= graph.size()) throw DimensionError("state index out of range");
  return reachable_in(graph, x, n).contains(y);
}

bool n_step_accessible(const UpperTransitionOperator& op, std::size_t x, std::size_t y, std::size_t n,
                       const Settings& settings) {
  return n_step_accessible(support_digraph(op, settings), x, y, n);
}

namespace {

// Tarjan's algorithm; returns the component id of every vertex.
std::vector<std::size_t> strongly_connected(const SupportDigraph& g, std::size_t& count) {
  const std::size_t n = g.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  count = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : g.successors[v].indices()) {
      if (index[w] == unset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
      } while (w != v);
      ++count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == unset) visit(v);
  return comp;
}

}  // namespace

ClassificationReport classify(const SupportDigraph& graph) {
  const std::size_t n = graph.size();
  ClassificationReport report;
  std::size_t count = 0;
  auto comp = strongly_connected(graph, count);

  // Renumber components by their smallest member.
  std::vector<std::size_t> first(count, n);
  for (std::size_t x = 0; x < n; ++x) first[comp[x]] = std::min(first[comp[x]], x);
  std::vector<std::size_t> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return first[a] < first[b]; });
  std::vector<std::size_t> rank(count);
  for (std::size_t i = 0; i < count; ++i) rank[perm[i]] = i;

  report.class_of.resize(n);
  report.classes.resize(count);
  for (std::size_t x = 0; x < n; ++x) {
    report.class_of[x] = rank[comp[x]];
    report.classes[rank[comp[x]]].states.push_back(x);
  }

  // Condensation and its transitive closure.
  std::vector<std::set<std::size_t>> direct(count);
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : graph.successors[x].indices())
      if (report.class_of[x] != report.class_of[y]) direct[report.class_of[x]].insert(report.class_of[y]);
  std::vector<std::vector<bool>> reach(count, std::vector<bool>(count, false));
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<std::size_t> todo(direct[c].begin(), direct[c].end());
    while (!todo.empty()) {
      auto d = todo.back();
      todo.pop_back();
      if (reach[c][d]) continue;
      reach[c][d] = true;
      todo.insert(todo.end(), direct[d].begin(), direct[d].end());
    }
  }
  for (std::size_t c = 0; c < count; ++c)
    for (auto d : direct[c]) {
      bool implied = false;
      for (auto e : direct[c])
        if (e != d && reach[e][d]) implied = true;
      if (!implied) report.order.emplace_back(c, d);
    }

  for (std::size_t c = 0; c < count; ++c) {
    auto& cls = report.classes[c];
    cls.maximal = direct[c].empty();
    (cls.maximal ? report.maximal_classes : report.transient_classes).push_back(c);

    // BFS levels inside the class; the period is the gcd of level mismatches.
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> level(n, unset);
    std::queue<std::size_t> q;
    level[cls.states.front()] = 0;
    q.push(cls.states.front());
    std::size_t d = 0;
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto v : graph.successors[u].indices()) {
        if (report.class_of[v] != c) continue;
        if (level[v] == unset) {
          level[v] = level[u] + 1;
          q.push(v);
        } else {
          auto diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
          d = std::gcd(d, static_cast<std::size_t>(diff < 0 ? -diff : diff));
        }
      }
    }
    cls.period = d;
    if (cls.maximal && d > 0)
      for (auto x : cls.states) cls.cyclic_residues.push_back(level[x] % d);
  }

  report.regular = count == 1 && report.classes.front().period == 1;
  report.maximal_class_regular =
      std::all_of(report.maximal_classes.begin(), report.maximal_classes.end(),
                  [&](auto c) { return report.classes[c].period == 1; });
  if (report.maximal_classes.size() == 1) {
    report.top_class = report.maximal_classes.front();
    report.top_class_regular = report.classes[*report.top_class].period == 1;
  }
  return report;
}

ClassificationReport classify(const UpperTransitionOperator& op, const Settings& settings) {
  auto report = classify(support_digraph(op, settings));
  if (report.top_class_regular) report.regularly_absorbing = regularly_absorbing(op, settings).regularly_absorbing;
  return report;
}

StateSet lower_support_step(const UpperTransitionOperator& op, const StateSet& target,
                            const Settings& settings) {
  if (target.universe() != op.size()) throw DimensionError("lower support step: state set size mismatch");
  StateSet out(op.size());
  if (target.empty()) return out;
  for (std::size_t y = 0; y < op.size(); ++y)
    if (lower_hits(op.row(y), target, settings)) out.insert(y);
  return out;
}

AbsorptionWitness regularly_absorbing(const UpperTransitionOperator& op, const Settings& settings) {
  AbsorptionWitness w;
  w.top_class = StateSet(op.size());
  w.unreached = StateSet(op.size());
  w.hit_step.assign(op.size(), std::nullopt);

  auto report = classify(support_digraph(op, settings));
  if (!report.top_class_regular) {
    w.unreached = StateSet::all(op.size());
    return w;
  }
  for (auto x : report.classes[*report.top_class].states) w.top_class.insert(x);
  w.top_class_regular = true;

  std::set<StateSet> seen;
  StateSet current = w.top_class;
  StateSet covered = w.top_class;
  for (std::size_t k = 1; seen.insert(current).second; ++k) {
    current = lower_support_step(op, current, settings);
    for (auto y : current.indices())
      if (!w.hit_step[y]) w.hit_step[y] = k;
    covered = covered | current;
  }
  w.unreached = covered.complement();
  w.regularly_absorbing = w.unreached.empty();
  return w;
}

}  // namespace imc
