#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "imc/imc.hpp"

namespace imc::cli {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input. The message starts with the source name
/// and either "line:column" (syntax errors) or a JSON pointer.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed model file.
struct ModelDocument {
  StateSpace space;
  UncertaintyModel initial;
  /// One operator for a stationary chain, otherwise T_1, ..., T_{N-1}.
  std::vector<UpperTransitionOperator> steps;
  /// The file used the list-of-maps form for "transition".
  bool per_step = false;
  std::optional<Json> metadata;

  /// The chain with the given horizon; 0 picks 1 for stationary documents
  /// and the number of listed steps plus one otherwise.
  ImpreciseMarkovChainModel chain(std::size_t horizon = 0) const;
  /// The single operator of a stationary document. Throws InputError for
  /// per-step documents whose steps differ.
  const UpperTransitionOperator& stationary_operator(std::string_view command) const;
};

/// Rounds to 15 significant digits, so the shortest round-trip rendering of
/// the result has at most 15 digits.
double round15(double value);
/// printf("%.15g").
std::string format15(double value);
/// Rounded JSON number.
Json number(double value);
/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& value);

std::string read_file(const std::string& path);

ModelDocument parse_model(std::string_view text, std::string_view source,
                          const Settings& settings = kDefaultSettings);
ModelDocument load_model(const std::string& path, const Settings& settings = kDefaultSettings);

Json model_to_json(const UncertaintyModel& model);
Json document_to_json(const ModelDocument& doc);
/// Canonical form: fixed key order, every state listed, numbers rounded to
/// 15 significant digits.
std::string serialize_model(const ModelDocument& doc);

/// JSON object label -> number. Labels not mentioned are 0; unknown labels
/// are rejected.
Gamble parse_gamble(std::string_view text, std::string_view source, const StateSpace& space);
Gamble load_gamble(const std::string& path, const StateSpace& space);
/// Indicator of a comma-separated list of labels.
Gamble event_gamble(std::string_view labels, const StateSpace& space);
/// Comma-separated labels as state indices, in the given order.
std::vector<std::size_t> parse_labels(std::string_view labels, const StateSpace& space);

/// Map on X^arity from {"default": number, "values": [{"path": [...], "value": number}]}.
PathMap parse_path_map(std::string_view text, std::string_view source, const StateSpace& space,
                       std::size_t arity);
PathMap load_path_map(const std::string& path, const StateSpace& space, std::size_t arity);

/// Settings file: any subset of the Settings fields by name.
Settings parse_settings(std::string_view text, std::string_view source);
/// Settings from the file named by IMC_SETTINGS, or the defaults.
Settings settings_from_environment();

struct SweepGrid {
  std::size_t k = 1;
  std::vector<double> r;
  std::vector<double> epsilon;
  std::vector<std::size_t> n;
};

/// {"k": int, "r": [...], "epsilon": [...], "n": [...]}.
SweepGrid parse_sweep_grid(std::string_view text, std::string_view source);

}  // namespace imc::cli
