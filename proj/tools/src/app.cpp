#include "imc/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "imc/cli/document.hpp"
#include "imc/cli/svg.hpp"

namespace imc::cli {

namespace {

/// Agreement threshold between the operator and the set-chain fold.
constexpr double kAgreeTol = 1e-9;

struct GambleArgs {
  std::string file;
  std::string event;

  void add_to(CLI::App* cmd) {
    auto* g = cmd->add_option("--gamble,--h", file, "Gamble file (JSON map state -> number)");
    auto* e = cmd->add_option("--event", event, "Comma-separated states; the gamble is their indicator");
    g->excludes(e);
  }

  Gamble load(const StateSpace& space) const {
    if (!file.empty()) return load_gamble(file, space);
    if (!event.empty()) return event_gamble(event, space);
    throw InputError("one of --gamble or --event is required");
  }
};

Json bounds_json(double lo, double up, const std::string& side) {
  Json out = Json::object();
  if (side != "upper") out["lower"] = number(lo);
  if (side != "lower") out["upper"] = number(up);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot write file");
  f << text;
}

// expect ---------------------------------------------------------------------

struct ExpectArgs {
  std::string model;
  GambleArgs gamble;
  std::size_t time = 0;
  std::size_t horizon = 0;
  std::string joint;
  std::string situation;
  std::string side = "both";
};

int cmd_expect(const ExpectArgs& a, const Settings& settings, std::ostream& out) {
  auto doc = load_model(a.model, settings);
  const auto& space = doc.space;
  std::optional<PathMap> f;
  std::size_t horizon = 0;
  if (!a.joint.empty()) {
    if (a.horizon == 0) throw InputError("--joint needs --horizon");
    if (a.time != 0) throw InputError("--time cannot be combined with --joint");
    if (!a.gamble.file.empty() || !a.gamble.event.empty())
      throw InputError("--joint replaces --gamble/--event");
    horizon = a.horizon;
    f = load_path_map(a.joint, space, horizon);
  } else {
    if (a.horizon != 0) throw InputError("--horizon is only used with --joint");
    auto h = a.gamble.load(space);
    const std::size_t time = a.time == 0 ? 1 : a.time;
    if (a.situation.empty()) {
      if (doc.per_step && time > doc.steps.size() + 1)
        throw InputError("time " + std::to_string(time) + " needs " + std::to_string(time - 1) +
                         " transition steps but the model lists " +
                         std::to_string(doc.steps.size()));
      auto chain = doc.chain(doc.per_step ? time : 1);
      auto b = marginal_sequence(chain, h, time).back();
      out << dump(bounds_json(b.lower, b.upper, a.side));
      return kSuccess;
    }
    horizon = time;
    f = PathMap::at_time(h, horizon, time);
  }
  auto chain = doc.chain(horizon);
  double lo = 0.0, up = 0.0;
  if (a.situation.empty()) {
    lo = joint_lower(chain, *f);
    up = joint_upper(chain, *f);
  } else {
    auto path = parse_labels(a.situation, space);
    if (path.size() > horizon)
      throw InputError("situation has " + std::to_string(path.size()) +
                       " states, more than the horizon " + std::to_string(horizon));
    lo = conditional_lower(chain, *f, path);
    up = conditional_upper(chain, *f, path);
  }
  out << dump(bounds_json(lo, up, a.side));
  return kSuccess;
}

// classify -------------------------------------------------------------------

int cmd_classify(const std::string& model, const Settings& settings, std::ostream& out) {
  auto doc = load_model(model, settings);
  const auto& op = doc.stationary_operator("classify");
  const auto& space = doc.space;
  auto report = classify(op, settings);
  auto absorption = regularly_absorbing(op, settings);

  Json classes = Json::array();
  for (const auto& c : report.classes) {
    Json entry = Json::object();
    Json states = Json::array();
    for (auto s : c.states) states.push_back(space.label(s));
    entry["states"] = std::move(states);
    entry["period"] = c.period;
    entry["maximal"] = c.maximal;
    if (!c.cyclic_residues.empty()) {
      Json residues = Json::object();
      for (std::size_t i = 0; i < c.states.size(); ++i)
        residues[space.label(c.states[i])] = c.cyclic_residues[i];
      entry["cyclic_residues"] = std::move(residues);
    }
    classes.push_back(std::move(entry));
  }
  Json order = Json::array();
  for (auto [from, to] : report.order) order.push_back(Json::array({from, to}));

  Json result = Json::object();
  result["classes"] = std::move(classes);
  result["order"] = std::move(order);
  result["maximal_classes"] = report.maximal_classes;
  result["transient_classes"] = report.transient_classes;
  result["top_class"] = report.top_class ? Json(*report.top_class) : Json(nullptr);
  result["regular"] = report.regular;
  result["maximal_class_regular"] = report.maximal_class_regular;
  result["top_class_regular"] = report.top_class_regular;
  result["regularly_absorbing"] = report.regularly_absorbing;
  if (report.top_class_regular) {
    Json steps = Json::object();
    for (std::size_t x = 0; x < space.size(); ++x)
      steps[space.label(x)] =
          absorption.hit_step[x] ? Json(*absorption.hit_step[x]) : Json(nullptr);
    result["lower_reach_step"] = std::move(steps);
  }
  out << dump(result);
  return kSuccess;
}

// limit ----------------------------------------------------------------------

struct LimitArgs {
  std::string model;
  GambleArgs gamble;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::string trace;
  std::string side = "upper";
};

int cmd_limit(const LimitArgs& a, const Settings& settings, std::ostream& out) {
  auto doc = load_model(a.model, settings);
  const auto& op = doc.stationary_operator("limit");
  auto h = a.gamble.load(doc.space);
  const double tol = a.tol.value_or(settings.limit_tol);
  const std::size_t max_iter = a.max_iter.value_or(settings.max_iter);
  const bool lower_side = a.side == "lower";
  auto result = invariant_upper_expectation(op, lower_side ? -h : h, tol, max_iter);
  if (lower_side) {
    result.limit_value = -result.limit_value;
    for (auto& e : result.envelope_trace) e = {-e.max, -e.min};
  }
  if (!a.trace.empty()) {
    std::ostringstream csv;
    csv << "n,min,max\n";
    for (std::size_t n = 0; n < result.envelope_trace.size(); ++n)
      csv << n << "," << format15(result.envelope_trace[n].min) << ","
          << format15(result.envelope_trace[n].max) << "\n";
    write_file(a.trace, csv.str());
  }
  const auto& last = result.envelope_trace.back();
  Json j = Json::object();
  j["side"] = a.side;
  j["status"] = std::string(to_string(result.status));
  j["limit_value"] = number(result.limit_value);
  j["iterations"] = result.iterations;
  j["envelope"] = Json{{"min", number(last.min)}, {"max", number(last.max)}};
  out << dump(j);
  return result.status == ConvergenceStatus::converged ? kSuccess : kNotConverged;
}

// trajectory -----------------------------------------------------------------

struct TrajectoryArgs {
  std::string model;
  std::size_t steps = 0;
  std::string out;
  bool svg = false;
  std::vector<std::size_t> svg_steps;
};

std::vector<std::size_t> default_svg_steps(std::size_t steps) {
  std::vector<std::size_t> out;
  for (std::size_t base = 1; base <= steps; base *= 10)
    for (std::size_t m : {1u, 2u, 5u})
      if (base * m <= steps) out.push_back(base * m);
  if (out.empty() || out.back() != steps) out.push_back(steps);
  return out;
}

int cmd_trajectory(const TrajectoryArgs& a, const Settings& settings, std::ostream& out) {
  auto doc = load_model(a.model, settings);
  const auto& space = doc.space;
  if (a.steps == 0) throw InputError("--steps must be at least 1");
  if (a.svg && space.size() != 3)
    throw InputError("--svg needs a model with exactly 3 states, this one has " +
                     std::to_string(space.size()));
  if (a.svg && a.out.empty()) throw InputError("--svg needs --out");
  if (doc.per_step && a.steps > doc.steps.size() + 1)
    throw InputError(std::to_string(a.steps) + " steps need " + std::to_string(a.steps - 1) +
                     " transition steps but the model lists " + std::to_string(doc.steps.size()));
  auto chain = doc.chain(doc.per_step ? a.steps : 1);

  std::vector<std::vector<Bounds>> per_state;
  for (std::size_t x = 0; x < space.size(); ++x)
    per_state.push_back(marginal_sequence(chain, Gamble::indicator(space, x), a.steps));

  std::ostringstream csv;
  csv << "n,state,lower,upper\n";
  for (std::size_t n = 1; n <= a.steps; ++n)
    for (std::size_t x = 0; x < space.size(); ++x)
      csv << n << "," << space.label(x) << "," << format15(per_state[x][n - 1].lower) << ","
          << format15(per_state[x][n - 1].upper) << "\n";

  if (a.out.empty()) {
    out << csv.str();
    return kSuccess;
  }
  Json summary = Json::object();
  write_file(a.out + ".csv", csv.str());
  summary["csv"] = a.out + ".csv";
  if (a.svg) {
    auto selected = a.svg_steps.empty() ? default_svg_steps(a.steps) : a.svg_steps;
    std::vector<TrajectoryStep> steps;
    for (auto n : selected) {
      if (n == 0 || n > a.steps)
        throw InputError("--svg-steps value " + std::to_string(n) + " is outside 1.." +
                         std::to_string(a.steps));
      TrajectoryStep step{n, {}};
      for (std::size_t x = 0; x < space.size(); ++x) step.singleton.push_back(per_state[x][n - 1]);
      steps.push_back(std::move(step));
    }
    write_file(a.out + ".svg", ternary_svg(space, steps, settings));
    summary["svg"] = a.out + ".svg";
  }
  summary["steps"] = a.steps;
  out << dump(summary);
  return kSuccess;
}

// setchain -------------------------------------------------------------------

struct SetChainArgs {
  std::string model;
  GambleArgs gamble;
  std::size_t n = 0;
  std::string x;
  bool scrambling = false;
  std::size_t m_max = 0;
};

Json pattern_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c) > 0.0 ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_setchain(const SetChainArgs& a, const Settings& settings, std::ostream& out) {
  auto doc = load_model(a.model, settings);
  const auto& op = doc.stationary_operator("setchain");
  auto set = extreme_matrices(op, settings);
  Json j = Json::object();
  j["matrices"] = set.size();
  if (a.scrambling) {
    if (a.m_max == 0) throw InputError("--scrambling needs --m-max of at least 1");
    auto v = product_scrambling_check(set, a.m_max, settings);
    j["verdict"] = std::string(to_string(v.kind));
    j["m"] = v.m;
    j["proven_for_all_m"] = v.proven_for_all_m;
    if (v.witness_pattern)
      j["witness"] = Json{{"factors", v.witness_factors}, {"pattern", pattern_json(*v.witness_pattern)}};
    out << dump(j);
    return kSuccess;
  }
  if (a.n == 0) throw InputError("--n must be at least 1 (or use --scrambling)");
  if (a.x.empty()) throw InputError("--x is required");
  auto h = a.gamble.load(doc.space);
  auto xs = parse_labels(a.x, doc.space);
  if (xs.size() != 1) throw InputError("--x takes a single state");
  const std::size_t x = xs.front();
  Bounds op_value{power_apply(op, h, a.n, Side::lower)[x], power_apply(op, h, a.n, Side::upper)[x]};
  auto set_value = max_product_expectation(set, h, a.n, x, settings);
  j["operator_value"] = Json{{"lower", number(op_value.lower)}, {"upper", number(op_value.upper)}};
  j["setchain_value"] = Json{{"lower", number(set_value.lower)}, {"upper", number(set_value.upper)}};
  j["agree"] = std::abs(op_value.lower - set_value.lower) < kAgreeTol &&
               std::abs(op_value.upper - set_value.upper) < kAgreeTol;
  out << dump(j);
  return kSuccess;
}

// reliability ----------------------------------------------------------------

struct ReliabilityArgs {
  std::size_t k = 0;
  std::size_t n = 0;
  std::optional<double> r_lower;
  std::optional<double> r_upper;
  std::string sweep;
  std::string out;
};

int cmd_reliability(const ReliabilityArgs& a, std::ostream& out) {
  if (!a.sweep.empty()) {
    auto grid = parse_sweep_grid(read_file(a.sweep), a.sweep);
    auto rows = reliability_sweep(grid.k, grid.r, grid.epsilon, grid.n);
    std::ostringstream csv;
    csv << "r,epsilon,n,f_lower,f_upper\n";
    for (const auto& r : rows)
      csv << format15(r.r) << "," << format15(r.epsilon) << "," << r.n << ","
          << format15(r.f_lower) << "," << format15(r.f_upper) << "\n";
    if (a.out.empty())
      out << csv.str();
    else
      write_file(a.out, csv.str());
    return kSuccess;
  }
  if (a.k == 0 || a.n == 0 || !a.r_lower || !a.r_upper)
    throw InputError("reliability needs --k, --n, --r-lower and --r-upper, or --sweep");
  ReliabilitySpec spec{a.k, a.n, *a.r_lower, *a.r_upper};
  auto b = failure_bounds(spec);
  auto cf = failure_bounds_closed_form(spec);
  auto absorption = regularly_absorbing(build_embedded_chain(spec).transitions().at(1));
  Json j = Json::object();
  j["k"] = spec.k;
  j["n"] = spec.n;
  j["r_lower"] = number(spec.r_lower);
  j["r_upper"] = number(spec.r_upper);
  j["failure"] = Json{{"lower", number(b.lower)}, {"upper", number(b.upper)}};
  j["closed_form"] = Json{{"lower", number(cf.lower)}, {"upper", number(cf.upper)}};
  j["top_class_regular"] = absorption.top_class_regular;
  j["regularly_absorbing"] = absorption.regularly_absorbing;
  if (a.out.empty())
    out << dump(j);
  else
    write_file(a.out, dump(j));
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Imprecise Markov chains: inference, classification and limits", "imc"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  const std::vector<std::string> sides{"lower", "upper", "both"};

  ExpectArgs expect;
  auto* c_expect = app.add_subcommand("expect", "Lower/upper expectation of a gamble or joint map");
  c_expect->add_option("model", expect.model, "Model file")->required();
  expect.gamble.add_to(c_expect);
  auto* o_time = c_expect->add_option("--time", expect.time, "Time n of the marginal E_n (default 1)");
  auto* o_horizon = c_expect->add_option("--horizon", expect.horizon, "Horizon N of the joint map");
  auto* o_joint = c_expect->add_option("--joint", expect.joint, "Joint map file on paths of length N");
  c_expect->add_option("--situation", expect.situation, "Comma-separated observed states x_1..x_m");
  c_expect->add_option("--side", expect.side, "lower, upper or both")
      ->check(CLI::IsMember(sides));
  o_time->excludes(o_joint);
  o_horizon->needs(o_joint);

  std::string classify_model;
  auto* c_classify = app.add_subcommand("classify", "Communication classes, periods and flags");
  c_classify->add_option("model", classify_model, "Model file")->required();

  LimitArgs limit;
  auto* c_limit = app.add_subcommand("limit", "Limit of T^n h by Perron-Frobenius iteration");
  c_limit->add_option("model", limit.model, "Model file")->required();
  limit.gamble.add_to(c_limit);
  c_limit->add_option("--tol", limit.tol, "Envelope gap at which iteration stops");
  c_limit->add_option("--max-iter", limit.max_iter, "Iteration limit");
  c_limit->add_option("--trace", limit.trace, "Write the envelope trace (n,min,max) as CSV");
  c_limit->add_option("--side", limit.side, "lower or upper")
      ->check(CLI::IsMember(std::vector<std::string>{"lower", "upper"}));

  TrajectoryArgs traj;
  auto* c_traj = app.add_subcommand("trajectory", "Singleton bounds of the marginals over time");
  c_traj->add_option("model", traj.model, "Model file")->required();
  c_traj->add_option("--steps", traj.steps, "Number of time steps")->required();
  c_traj->add_option("--out", traj.out, "Output prefix for <prefix>.csv and <prefix>.svg");
  c_traj->add_flag("--svg", traj.svg, "Also draw a ternary plot (3 states only)");
  c_traj->add_option("--svg-steps", traj.svg_steps, "Steps drawn in the plot")->delimiter(',');

  SetChainArgs sc;
  auto* c_sc = app.add_subcommand("setchain", "Compare with the Markov set-chain, or check scrambling");
  c_sc->add_option("model", sc.model, "Model file")->required();
  sc.gamble.add_to(c_sc);
  c_sc->add_option("--n", sc.n, "Number of steps");
  c_sc->add_option("--x", sc.x, "Start state");
  c_sc->add_flag("--scrambling", sc.scrambling, "Run the product scrambling check");
  c_sc->add_option("--m-max", sc.m_max, "Largest product length examined");

  ReliabilityArgs rel;
  auto* c_rel = app.add_subcommand("reliability", "Failure bounds of a k-out-of-n:F system");
  c_rel->add_option("--k", rel.k, "Failures that bring the system down");
  c_rel->add_option("--n", rel.n, "Number of components");
  c_rel->add_option("--r-lower", rel.r_lower, "Lower component reliability");
  c_rel->add_option("--r-upper", rel.r_upper, "Upper component reliability");
  c_rel->add_option("--sweep", rel.sweep, "Grid file; prints CSV r,epsilon,n,f_lower,f_upper");
  c_rel->add_option("--out", rel.out, "Write the result to a file instead of stdout");

  std::string format_model;
  auto* c_format = app.add_subcommand("format", "Print the model in canonical form");
  c_format->add_option("model", format_model, "Model file")->required();

  std::vector<std::string> argv_storage{"imc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "imc: error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const Settings settings = settings_from_environment();
    if (c_expect->parsed()) return cmd_expect(expect, settings, out);
    if (c_classify->parsed()) return cmd_classify(classify_model, settings, out);
    if (c_limit->parsed()) return cmd_limit(limit, settings, out);
    if (c_traj->parsed()) return cmd_trajectory(traj, settings, out);
    if (c_sc->parsed()) return cmd_setchain(sc, settings, out);
    if (c_rel->parsed()) return cmd_reliability(rel, out);
    if (c_format->parsed()) {
      out << serialize_model(load_model(format_model, settings));
      return kSuccess;
    }
  } catch (const SizeCapError& e) {
    err << "imc: size cap exceeded: " << e.what() << "\n";
    return kSizeCap;
  } catch (const InputError& e) {
    err << "imc: error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "imc: error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "imc: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

}  // namespace imc::cli
