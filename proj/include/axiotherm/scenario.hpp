#pragma once

#include <cstdint>
#include <string>

#include "axiotherm/catalog.hpp"
#include "axiotherm/json_io.hpp"
#include "axiotherm/numerics.hpp"

namespace axiotherm::scenario {

/// Parsed scenario document. The catalog is the built-in registry extended
/// with any model aliases the document declares; numerics is already merged
/// over the ambient base.
struct Scenario {
  std::string command;
  std::uint64_t seed = 0;
  numerics::NumericsConfig numerics;
  Catalog catalog;
  json_io::json payload;
};

/// Outcome of running a scenario: the JSON document, the same artifact in
/// CSV where the command has a natural tabular form, and the process exit
/// code (0 = pass, 1 = a reported check failed). Input-contract violations
/// are thrown, not encoded here; the CLI maps them to exit code 2.
struct RunResult {
  json_io::json output;
  std::string csv;
  int exit_code = 0;
};

/// Numerics defaults layered with the JSON file named by the
/// AXIOTHERM_NUMERICS environment variable, when set and non-empty.
[[nodiscard]] numerics::NumericsConfig ambient_numerics();

/// Validates a scenario document: {"command", "seed"?, "numerics"?,
/// "models"?, "payload"?}. Commands: measure-entropy, temperature,
/// equilibrate, audit-reservoir, verify. Field errors throw SchemaError with
/// the offending path; unknown model references throw UnknownModelError.
[[nodiscard]] Scenario parse_scenario(const json_io::json& doc,
                                      const numerics::NumericsConfig& base,
                                      const std::string& path = "scenario");

/// Executes the command. Deterministic given (document, seed, config):
/// output objects have sorted keys and carry no timestamps or addresses.
[[nodiscard]] RunResult run_scenario(const Scenario& s);

/// Reads, parses against ambient numerics, and runs a scenario file.
[[nodiscard]] RunResult run_scenario_file(const std::string& file_path);

}  // namespace axiotherm::scenario
