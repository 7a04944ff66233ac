#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "axiotherm/core.hpp"
#include "axiotherm/json_io.hpp"
#include "axiotherm/scenario.hpp"

namespace {

using axiotherm::json_io::json;

json load_doc(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in)
    throw axiotherm::SchemaError(file_path, "cannot read scenario file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw axiotherm::SchemaError(file_path, e.what());
  }
}

json parse_inline(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw axiotherm::SchemaError(flag, e.what());
  }
}

/// name=value pairs from repeated --param flags.
std::vector<std::pair<std::string, double>> parse_params(
    const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, double>> kv;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw axiotherm::SchemaError("--param", "expected name=value, got '" + item +
                                                  "'");
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw axiotherm::SchemaError("--param", "'" + text + "' is not a number");
    }
    if (used != text.size())
      throw axiotherm::SchemaError("--param", "'" + text + "' is not a number");
    kv.emplace_back(name, value);
  }
  return kv;
}

void emit(const axiotherm::scenario::RunResult& res, const std::string& out_path,
          const std::string& format) {
  const std::string text =
      format == "csv" ? res.csv : res.output.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw axiotherm::SchemaError("--out", "cannot write '" + out_path + "'");
  out << text;
}

/// Runs a scenario document with optional seed/cases overrides from flags.
axiotherm::scenario::RunResult run_doc(json doc,
                                       const std::optional<std::uint64_t>& seed,
                                       const std::optional<int>& cases) {
  if (doc.is_object()) {
    if (seed) doc["seed"] = *seed;
    if (cases && doc.value("command", "") == "verify") {
      if (!doc.contains("payload")) doc["payload"] = json::object();
      if (doc["payload"].is_object()) doc["payload"]["cases_per_check"] = *cases;
    }
  }
  const auto s =
      axiotherm::scenario::parse_scenario(doc, axiotherm::scenario::ambient_numerics());
  return axiotherm::scenario::run_scenario(s);
}

json scenario_for_subcommand(const std::string& file_path,
                             const std::string& command) {
  json doc = load_doc(file_path);
  if (doc.is_object()) {
    if (!doc.contains("command")) doc["command"] = command;
    else if (doc.value("command", "") != command)
      throw axiotherm::SchemaError(
          "scenario.command", "this subcommand runs '" + command +
                                  "' scenarios, the file declares '" +
                                  doc.value("command", "") + "'");
  }
  return doc;
}

struct GridFlags {
  double offset_lo = 1e-2;
  double offset_hi = 1e4;
  int points = 25;
};

void add_grid_flags(CLI::App* cmd, GridFlags& grid) {
  cmd->add_option("--offset-lo", grid.offset_lo,
                  "smallest energy offset above the ground state");
  cmd->add_option("--offset-hi", grid.offset_hi,
                  "largest energy offset above the ground state");
  cmd->add_option("--points", grid.points, "grid size");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "operational thermodynamics engine: entropy meters, calibrated "
      "temperatures, equilibrium partitions, and the theorem-verification "
      "suite"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  app.add_option("--out", out_path, "write the artifact to this path")
      ->capture_default_str();
  app.add_option("--format", format, "artifact format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::optional<std::uint64_t> seed;
  std::optional<int> cases;
  app.add_option("--seed", seed, "seed for randomized sweeps");
  app.add_option("--cases", cases, "cases per verification check");

  std::string scenario_path;
  auto* cmd_run = app.add_subcommand("run", "run a scenario file");
  cmd_run->add_option("scenario", scenario_path, "scenario JSON file")->required();

  std::string me_path;
  auto* cmd_me =
      app.add_subcommand("measure-entropy", "measure an entropy difference");
  cmd_me->add_option("--scenario", me_path, "measure-entropy scenario file")
      ->required();

  std::string state_text;
  std::string reference_text;
  double t_ref = 273.16;
  auto* cmd_temp =
      app.add_subcommand("temperature", "read a calibrated temperature");
  cmd_temp->add_option("--state", state_text, "state JSON")->required();
  cmd_temp->add_option("--reference", reference_text, "reference state JSON")
      ->required();
  cmd_temp->add_option("--t-ref", t_ref, "temperature assigned to the reference")
      ->capture_default_str();

  std::string eq_path;
  auto* cmd_eq =
      app.add_subcommand("equilibrate", "split an energy budget at equal T");
  cmd_eq->add_option("--scenario", eq_path, "equilibrate scenario file")
      ->required();

  std::string vm_model;
  std::vector<std::string> vm_params;
  GridFlags vm_grid;
  auto* cmd_vm = app.add_subcommand("validate-model",
                                    "audit a model's structural invariants");
  cmd_vm->add_option("--model", vm_model, "registered model id")->required();
  cmd_vm->add_option("--param", vm_params, "model parameter as name=value");
  add_grid_flags(cmd_vm, vm_grid);

  std::string ar_model;
  std::vector<std::string> ar_params;
  GridFlags ar_grid;
  auto* cmd_ar = app.add_subcommand(
      "audit-reservoir", "audit that temperature drifts with energy");
  cmd_ar->add_option("--model", ar_model, "registered model id")->required();
  cmd_ar->add_option("--param", ar_params, "model parameter as name=value");
  add_grid_flags(cmd_ar, ar_grid);

  bool include_broken = false;
  std::optional<double> scan_half_width;
  auto* cmd_verify =
      app.add_subcommand("verify", "run the full theorem-verification suite");
  cmd_verify->add_flag("--include-broken", include_broken,
                       "inject deliberately broken relations");
  cmd_verify->add_option("--scan-half-width", scan_half_width,
                         "fixed half-width for equilibrium scans");

  // Lets --seed/--out/--format trail the subcommand name.
  for (CLI::App* sub : {cmd_run, cmd_me, cmd_temp, cmd_eq, cmd_vm, cmd_ar,
                        cmd_verify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    axiotherm::scenario::RunResult res;

    if (*cmd_run) {
      res = run_doc(load_doc(scenario_path), seed, cases);
    } else if (*cmd_me) {
      res = run_doc(scenario_for_subcommand(me_path, "measure-entropy"), seed,
                    cases);
    } else if (*cmd_temp) {
      json doc = json::object();
      doc["command"] = "temperature";
      doc["payload"] = json::object();
      doc["payload"]["state"] = parse_inline(state_text, "--state");
      doc["payload"]["reference"] = parse_inline(reference_text, "--reference");
      doc["payload"]["T_ref"] = t_ref;
      res = run_doc(std::move(doc), seed, cases);
    } else if (*cmd_eq) {
      res = run_doc(scenario_for_subcommand(eq_path, "equilibrate"), seed, cases);
    } else if (*cmd_vm) {
      const auto cat = axiotherm::Catalog::with_builtins();
      if (!cat.has(vm_model))
        throw axiotherm::UnknownModelError("model '" + vm_model +
                                           "' is not registered");
      const auto& entry = cat.entry(vm_model);
      const auto kv = parse_params(vm_params);
      const auto beta =
          kv.empty() ? entry.default_params
                     : cat.params_in_declared_order(vm_model, kv);
      cat.check_params(vm_model, beta);
      const auto grid = axiotherm::numerics::log_offset_grid(
          entry.relation.e_ground(beta), vm_grid.offset_lo, vm_grid.offset_hi,
          vm_grid.points);
      const auto rep = axiotherm::validate_model(
          entry.relation, beta, grid, axiotherm::scenario::ambient_numerics());
      res.output = json::object();
      res.output["model"] = vm_model;
      res.output["beta"] = axiotherm::json_io::params_to_json(beta);
      res.output["report"] = axiotherm::json_io::report_to_json(rep);
      res.csv = axiotherm::json_io::report_to_csv(rep);
      res.exit_code = rep.overall_pass() ? 0 : 1;
    } else if (*cmd_ar) {
      json doc = json::object();
      doc["command"] = "audit-reservoir";
      doc["payload"] = json::object();
      doc["payload"]["model"] = ar_model;
      const auto kv = parse_params(ar_params);
      if (!kv.empty()) {
        json beta = json::object();
        for (const auto& [name, value] : kv) beta[name] = value;
        doc["payload"]["beta"] = std::move(beta);
      }
      doc["payload"]["grid"] = json::object();
      doc["payload"]["grid"]["offset_lo"] = ar_grid.offset_lo;
      doc["payload"]["grid"]["offset_hi"] = ar_grid.offset_hi;
      doc["payload"]["grid"]["points"] = ar_grid.points;
      res = run_doc(std::move(doc), seed, cases);
    } else {
      json doc = json::object();
      doc["command"] = "verify";
      doc["payload"] = json::object();
      if (include_broken) doc["payload"]["include_broken_models"] = true;
      if (scan_half_width) doc["payload"]["scan_half_width"] = *scan_half_width;
      res = run_doc(std::move(doc), seed, cases);
    }

    emit(res, out_path, format);
    return res.exit_code;
  } catch (const axiotherm::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const axiotherm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  }
}
