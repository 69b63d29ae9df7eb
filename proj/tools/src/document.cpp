#include "imc/cli/document.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace imc::cli {

namespace {

std::string escape_pointer(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

/// A JSON value together with its location, for error messages.
struct Node {
  const Json& value;
  std::string pointer;
  std::string_view source;

  [[noreturn]] void fail(const std::string& message) const {
    throw InputError(std::string(source) + ": " + (pointer.empty() ? "/" : pointer) + ": " +
                     message);
  }

  Node child(std::string_view key) const {
    return {value.at(std::string(key)), pointer + "/" + escape_pointer(key), source};
  }
  Node child(std::size_t i) const { return {value.at(i), pointer + "/" + std::to_string(i), source}; }

  bool has(std::string_view key) const { return value.contains(std::string(key)); }

  Node require(std::string_view key) const {
    if (!has(key)) fail("missing field \"" + std::string(key) + "\"");
    return child(key);
  }

  void expect_object(std::initializer_list<std::string_view> allowed) const {
    if (!value.is_object()) fail("expected an object");
    for (const auto& [key, _] : value.items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) child(key).fail("unknown field");
    }
  }

  void expect_array() const {
    if (!value.is_array()) fail("expected an array");
  }

  double as_number() const {
    if (!value.is_number()) fail("expected a number");
    double v = value.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::size_t as_count() const {
    if (value.is_number_unsigned()) return value.get<std::size_t>();
    if (value.is_number_integer() && value.get<long long>() >= 0)
      return static_cast<std::size_t>(value.get<long long>());
    fail("expected a non-negative integer");
  }

  std::string as_string() const {
    if (!value.is_string()) fail("expected a string");
    return value.get<std::string>();
  }
};

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string what = e.what();
    auto pos = what.find("] ");
    if (pos != std::string::npos) what = what.substr(pos + 2);
    throw InputError(std::string(source) + ": " + what);
  }
}

std::size_t state_index(const Node& node, const StateSpace& space, const std::string& label) {
  if (!space.contains(label)) node.fail("unknown state \"" + label + "\"");
  return space.index(label);
}

/// Object label -> number over the state space; missing labels get `fill`.
std::vector<double> state_values(const Node& node, const StateSpace& space, double fill = 0.0) {
  if (!node.value.is_object()) node.fail("expected an object mapping states to numbers");
  std::vector<double> out(space.size(), fill);
  for (const auto& [key, _] : node.value.items()) {
    auto entry = node.child(key);
    out[state_index(entry, space, key)] = entry.as_number();
  }
  return out;
}

StateSet state_set(const Node& node, const StateSpace& space) {
  node.expect_array();
  StateSet set(space.size());
  for (std::size_t i = 0; i < node.value.size(); ++i) {
    auto entry = node.child(i);
    auto idx = state_index(entry, space, entry.as_string());
    if (set.contains(idx)) entry.fail("state listed twice");
    set.insert(idx);
  }
  return set;
}

UncertaintyModel parse_uncertainty(const Node& node, const StateSpace& space,
                                   const Settings& settings) {
  if (!node.value.is_object()) node.fail("expected a model object");
  const std::string kind = node.require("kind").as_string();
  try {
    if (kind == "precise") {
      node.expect_object({"kind", "mass"});
      return UncertaintyModel::precise(
          MassFunction(space, state_values(node.require("mass"), space), settings));
    }
    if (kind == "vacuous") {
      node.expect_object({"kind"});
      return UncertaintyModel::vacuous(space);
    }
    if (kind == "contamination") {
      node.expect_object({"kind", "epsilon", "base"});
      double eps = node.require("epsilon").as_number();
      return UncertaintyModel::contamination(
          eps, MassFunction(space, state_values(node.require("base"), space), settings));
    }
    if (kind == "belief") {
      node.expect_object({"kind", "focal"});
      auto list = node.require("focal");
      list.expect_array();
      std::vector<FocalElement> focal;
      for (std::size_t i = 0; i < list.value.size(); ++i) {
        auto f = list.child(i);
        f.expect_object({"set", "mass"});
        auto set = state_set(f.require("set"), space);
        if (set.empty()) f.child("set").fail("focal set is empty");
        focal.push_back({set, f.require("mass").as_number()});
      }
      return UncertaintyModel::belief(space, std::move(focal));
    }
    if (kind == "interval") {
      node.expect_object({"kind", "lower", "upper"});
      auto lo = state_values(node.require("lower"), space, 0.0);
      auto up = state_values(node.require("upper"), space, 1.0);
      return UncertaintyModel::interval(space, std::move(lo), std::move(up), settings);
    }
    if (kind == "polytope") {
      node.expect_object({"kind", "constraints"});
      auto list = node.require("constraints");
      list.expect_array();
      std::vector<Halfspace> hs;
      for (std::size_t i = 0; i < list.value.size(); ++i) {
        auto c = list.child(i);
        c.expect_object({"coefficients", "bound"});
        hs.push_back({Gamble(space, state_values(c.require("coefficients"), space)),
                      c.require("bound").as_number()});
      }
      return UncertaintyModel::polytope(CredalPolytope(space, std::move(hs), settings));
    }
  } catch (const Error& e) {
    node.fail(e.what());
  }
  node.child("kind").fail("unknown model kind \"" + kind +
                          "\" (expected precise, vacuous, contamination, belief, interval or "
                          "polytope)");
}

UpperTransitionOperator parse_operator(const Node& node, const StateSpace& space,
                                       const Settings& settings) {
  if (!node.value.is_object()) node.fail("expected an object mapping states to models");
  for (const auto& [key, _] : node.value.items()) state_index(node.child(key), space, key);
  std::vector<UncertaintyModel> rows;
  for (const auto& label : space.labels()) {
    if (!node.has(label)) node.fail("no transition model for state \"" + label + "\"");
    rows.push_back(parse_uncertainty(node.child(label), space, settings));
  }
  return UpperTransitionOperator(space, std::move(rows));
}

Json state_map(const StateSpace& space, std::span<const double> values) {
  Json out = Json::object();
  for (std::size_t i = 0; i < space.size(); ++i) out[space.label(i)] = number(values[i]);
  return out;
}

Json state_list(const StateSpace& space, const StateSet& set) {
  Json out = Json::array();
  for (auto i : set.indices()) out.push_back(space.label(i));
  return out;
}

Json operator_to_json(const UpperTransitionOperator& op) {
  Json out = Json::object();
  for (std::size_t x = 0; x < op.size(); ++x) out[op.space().label(x)] = model_to_json(op.row(x));
  return out;
}

}  // namespace

ImpreciseMarkovChainModel ModelDocument::chain(std::size_t horizon) const {
  if (horizon == 0) horizon = per_step ? steps.size() + 1 : 1;
  auto ops = per_step ? TimeIndexedOperators(steps) : TimeIndexedOperators(steps.front());
  if (per_step && horizon > steps.size() + 1)
    throw InputError("horizon " + std::to_string(horizon) + " needs " +
                     std::to_string(horizon - 1) + " transition steps but the model lists " +
                     std::to_string(steps.size()));
  return ImpreciseMarkovChainModel(initial, std::move(ops), horizon);
}

const UpperTransitionOperator& ModelDocument::stationary_operator(std::string_view command) const {
  for (const auto& op : steps)
    if (!(op == steps.front()))
      throw InputError(std::string(command) + " needs a stationary chain; the model lists " +
                       std::to_string(steps.size()) + " different transition steps");
  return steps.front();
}

double round15(double value) {
  if (!std::isfinite(value) || value == 0.0) return value == 0.0 ? 0.0 : value;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::strtod(buf, nullptr);
}

std::string format15(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

Json number(double value) { return round15(value); }

std::string dump(const Json& value) { return value.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ModelDocument parse_model(std::string_view text, std::string_view source,
                          const Settings& settings) {
  const Json doc = parse_json(text, source);
  Node root{doc, "", source};
  root.expect_object({"format_version", "states", "initial", "transition", "metadata"});
  auto version = root.require("format_version");
  if (!version.value.is_number_integer() || version.value.get<long long>() != 1)
    version.fail("unsupported format_version (expected 1)");

  auto states = root.require("states");
  states.expect_array();
  if (states.value.empty()) states.fail("at least one state is required");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < states.value.size(); ++i) {
    auto label = states.child(i).as_string();
    for (const auto& l : labels)
      if (l == label) states.child(i).fail("duplicate state \"" + label + "\"");
    labels.push_back(label);
  }
  StateSpace space(labels);

  auto initial = parse_uncertainty(root.require("initial"), space, settings);
  auto transition = root.require("transition");
  std::vector<UpperTransitionOperator> steps;
  bool per_step = transition.value.is_array();
  if (per_step) {
    if (transition.value.empty()) transition.fail("at least one transition step is required");
    for (std::size_t i = 0; i < transition.value.size(); ++i)
      steps.push_back(parse_operator(transition.child(i), space, settings));
  } else {
    steps.push_back(parse_operator(transition, space, settings));
  }
  std::optional<Json> metadata;
  if (root.has("metadata")) metadata = doc.at("metadata");
  return ModelDocument{space, std::move(initial), std::move(steps), per_step, std::move(metadata)};
}

ModelDocument load_model(const std::string& path, const Settings& settings) {
  return parse_model(read_file(path), path, settings);
}

Json model_to_json(const UncertaintyModel& model) {
  const auto& space = model.space();
  Json out = Json::object();
  out["kind"] = std::string(to_string(model.kind()));
  switch (model.kind()) {
    case ModelKind::precise:
      out["mass"] = state_map(space, model.as<PreciseModel>().mass.probabilities());
      break;
    case ModelKind::vacuous:
      break;
    case ModelKind::contamination: {
      const auto& m = model.as<ContaminationModel>();
      out["epsilon"] = number(m.epsilon);
      out["base"] = state_map(space, m.base.probabilities());
      break;
    }
    case ModelKind::belief: {
      Json focal = Json::array();
      for (const auto& f : model.as<BeliefModel>().focal)
        focal.push_back(Json{{"set", state_list(space, f.set)}, {"mass", number(f.mass)}});
      out["focal"] = std::move(focal);
      break;
    }
    case ModelKind::interval: {
      const auto& m = model.as<IntervalModel>();
      out["lower"] = state_map(space, m.lower);
      out["upper"] = state_map(space, m.upper);
      break;
    }
    case ModelKind::polytope: {
      Json list = Json::array();
      for (const auto& h : model.as<PolytopeModel>().region.halfspaces())
        list.push_back(Json{{"coefficients", state_map(space, h.coefficients.values())},
                            {"bound", number(h.bound)}});
      out["constraints"] = std::move(list);
      break;
    }
  }
  return out;
}

Json document_to_json(const ModelDocument& doc) {
  Json out = Json::object();
  out["format_version"] = 1;
  out["states"] = doc.space.labels();
  out["initial"] = model_to_json(doc.initial);
  if (doc.per_step) {
    Json list = Json::array();
    for (const auto& op : doc.steps) list.push_back(operator_to_json(op));
    out["transition"] = std::move(list);
  } else {
    out["transition"] = operator_to_json(doc.steps.front());
  }
  if (doc.metadata) out["metadata"] = *doc.metadata;
  return out;
}

std::string serialize_model(const ModelDocument& doc) { return dump(document_to_json(doc)); }

Gamble parse_gamble(std::string_view text, std::string_view source, const StateSpace& space) {
  const Json doc = parse_json(text, source);
  return Gamble(space, state_values(Node{doc, "", source}, space));
}

Gamble load_gamble(const std::string& path, const StateSpace& space) {
  return parse_gamble(read_file(path), path, space);
}

std::vector<std::size_t> parse_labels(std::string_view labels, const StateSpace& space) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= labels.size()) {
    auto end = labels.find(',', start);
    if (end == std::string_view::npos) end = labels.size();
    std::string label(labels.substr(start, end - start));
    if (!space.contains(label)) throw InputError("unknown state \"" + label + "\"");
    out.push_back(space.index(label));
    start = end + 1;
  }
  return out;
}

Gamble event_gamble(std::string_view labels, const StateSpace& space) {
  StateSet event(space.size());
  for (auto i : parse_labels(labels, space)) event.insert(i);
  return Gamble::indicator(space, event);
}

PathMap parse_path_map(std::string_view text, std::string_view source, const StateSpace& space,
                       std::size_t arity) {
  const Json doc = parse_json(text, source);
  Node root{doc, "", source};
  root.expect_object({"default", "values"});
  double fill = root.has("default") ? root.child("default").as_number() : 0.0;
  std::vector<double> values;
  try {
    values.assign(PathMap::zero(space, arity).size(), fill);
  } catch (const SizeCapError& e) {
    root.fail(e.what());
  }
  if (root.has("values")) {
    auto list = root.child("values");
    list.expect_array();
    for (std::size_t i = 0; i < list.value.size(); ++i) {
      auto entry = list.child(i);
      entry.expect_object({"path", "value"});
      auto path_node = entry.require("path");
      path_node.expect_array();
      if (path_node.value.size() != arity)
        path_node.fail("path has " + std::to_string(path_node.value.size()) +
                       " states, expected " + std::to_string(arity));
      std::size_t flat = 0;
      for (std::size_t t = 0; t < arity; ++t) {
        auto s = path_node.child(t);
        flat = flat * space.size() + state_index(s, space, s.as_string());
      }
      values[flat] = entry.require("value").as_number();
    }
  }
  return PathMap(space, arity, std::move(values));
}

PathMap load_path_map(const std::string& path, const StateSpace& space, std::size_t arity) {
  return parse_path_map(read_file(path), path, space, arity);
}

Settings parse_settings(std::string_view text, std::string_view source) {
  const Json doc = parse_json(text, source);
  Node root{doc, "", source};
  root.expect_object({"tol_feas", "dedup", "positivity", "limit_tol", "max_iter", "matrix_cap",
                      "product_cap", "pattern_cap"});
  Settings s;
  auto positive = [&](std::string_view key, double& field) {
    if (!root.has(key)) return;
    auto node = root.child(key);
    double v = node.as_number();
    if (!(v > 0.0)) node.fail("must be positive");
    field = v;
  };
  auto count = [&](std::string_view key, std::size_t& field) {
    if (!root.has(key)) return;
    auto node = root.child(key);
    auto v = node.as_count();
    if (v == 0) node.fail("must be positive");
    field = v;
  };
  positive("tol_feas", s.tol_feas);
  positive("dedup", s.dedup);
  positive("positivity", s.positivity);
  positive("limit_tol", s.limit_tol);
  count("max_iter", s.max_iter);
  count("matrix_cap", s.matrix_cap);
  count("product_cap", s.product_cap);
  count("pattern_cap", s.pattern_cap);
  return s;
}

Settings settings_from_environment() {
  const char* path = std::getenv("IMC_SETTINGS");
  if (path == nullptr || *path == '\0') return Settings{};
  return parse_settings(read_file(path), path);
}

SweepGrid parse_sweep_grid(std::string_view text, std::string_view source) {
  const Json doc = parse_json(text, source);
  Node root{doc, "", source};
  root.expect_object({"k", "r", "epsilon", "n"});
  SweepGrid grid;
  grid.k = root.require("k").as_count();
  auto numbers = [&](std::string_view key) {
    auto node = root.require(key);
    node.expect_array();
    std::vector<double> out;
    for (std::size_t i = 0; i < node.value.size(); ++i) out.push_back(node.child(i).as_number());
    return out;
  };
  grid.r = numbers("r");
  grid.epsilon = numbers("epsilon");
  auto n_node = root.require("n");
  n_node.expect_array();
  for (std::size_t i = 0; i < n_node.value.size(); ++i) grid.n.push_back(n_node.child(i).as_count());
  return grid;
}

}  // namespace imc::cli
