#include "axiotherm/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "axiotherm/equilibrium.hpp"
#include "axiotherm/meter.hpp"
#include "axiotherm/processes.hpp"
#include "axiotherm/verify.hpp"

namespace axiotherm::scenario {

namespace {

using json_io::json;

std::string fmt17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> c = {"measure-entropy", "temperature",
                                             "equilibrate", "audit-reservoir",
                                             "verify"};
  return c;
}

std::uint64_t parse_seed(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto s = v.get<std::int64_t>();
    if (s < 0) throw SchemaError(path, "seed must be non-negative");
    return static_cast<std::uint64_t>(s);
  }
  throw SchemaError(path, "expected an integer seed");
}

/// Registers an alias of a built-in family under a new id with its own
/// default parameters, so payload states can reference it without repeating
/// beta. The relation closures read beta per call, so the alias shares them.
void register_alias(Catalog& cat, const json& decl, const std::string& path) {
  json_io::reject_unknown_keys(decl, {"id", "family", "params"}, path);
  const auto id =
      json_io::as_string(json_io::require_field(decl, "id", path), path + ".id");
  if (id.empty()) throw SchemaError(path + ".id", "model id must be non-empty");
  const auto family = json_io::as_string(
      json_io::require_field(decl, "family", path), path + ".family");
  if (!cat.has(family))
    throw UnknownModelError("family '" + family + "' referenced at " + path +
                            ".family is not registered");

  CatalogEntry entry = cat.entry(family);
  entry.relation.model_id = id;
  if (decl.contains("params")) {
    const json& p = decl.at("params");
    json_io::require_object(p, path + ".params");
    std::vector<std::pair<std::string, double>> kv;
    for (const auto& [name, value] : p.items())
      kv.emplace_back(name, json_io::as_number(value, path + ".params." + name));
    entry.default_params = cat.params_in_declared_order(family, kv);
    cat.check_params(family, entry.default_params);
  }
  try {
    cat.register_entry(std::move(entry));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + ".id", e.what());
  }
}

RunResult run_measure_entropy(const Scenario& s) {
  const std::string p = "scenario.payload";
  json_io::reject_unknown_keys(s.payload, {"A_initial", "A_final", "meter", "sigma"},
                               p);
  const auto A1 = json_io::state_from_json(
      s.catalog, json_io::require_field(s.payload, "A_initial", p), p + ".A_initial");
  const auto A2 = json_io::state_from_json(
      s.catalog, json_io::require_field(s.payload, "A_final", p), p + ".A_final");
  const auto meter_start = json_io::stable_from_json(
      s.catalog, json_io::require_field(s.payload, "meter", p), p + ".meter");
  if (s.payload.contains("sigma") &&
      json_io::as_number(s.payload.at("sigma"), p + ".sigma") != 0.0)
    throw SchemaError(p + ".sigma",
                      "measurement requires a reversible process (sigma = 0)");

  const auto rec = processes::standard_process(s.catalog, A1, A2, meter_start, 0.0,
                                               s.numerics);
  const auto delta = meter::measure_entropy_difference(s.catalog, rec, s.numerics);

  RunResult res;
  res.output = json_io::delta_to_json(delta);
  res.output["meter_id"] = meter_start.model_id;
  res.output["work_done_by_AB"] = rec.work_done_by_AB;
  res.csv = "value,abs_error_estimate,quadrature_panels,meter_id\n" +
            fmt17(delta.value) + "," + fmt17(delta.abs_error_estimate) + "," +
            std::to_string(delta.quadrature_panels) + "," + meter_start.model_id +
            "\n";
  return res;
}

RunResult run_temperature(const Scenario& s) {
  const std::string p = "scenario.payload";
  json_io::reject_unknown_keys(s.payload, {"state", "reference", "T_ref"}, p);
  const auto state = json_io::stable_from_json(
      s.catalog, json_io::require_field(s.payload, "state", p), p + ".state");
  const auto reference = json_io::stable_from_json(
      s.catalog, json_io::require_field(s.payload, "reference", p), p + ".reference");
  meter::ReferenceCalibration cal{reference, 273.16};
  if (s.payload.contains("T_ref"))
    cal.T_ref = json_io::as_number(s.payload.at("T_ref"), p + ".T_ref");

  const double value =
      meter::calibrated_temperature(s.catalog, cal, state, s.numerics);

  RunResult res;
  res.output = json::object();
  res.output["value"] = value;
  res.output["T_ref"] = cal.T_ref;
  res.output["reference_model"] = reference.model_id;
  res.output["state_model"] = state.model_id;
  res.csv = "value,T_ref,reference_model,state_model\n" + fmt17(value) + "," +
            fmt17(cal.T_ref) + "," + reference.model_id + "," + state.model_id +
            "\n";
  return res;
}

RunResult run_equilibrate(const Scenario& s) {
  const std::string p = "scenario.payload";
  json_io::reject_unknown_keys(
      s.payload, {"model_A", "beta_A", "model_B", "beta_B", "E_total", "scan"}, p);
  const auto model_A = json_io::as_string(
      json_io::require_field(s.payload, "model_A", p), p + ".model_A");
  const auto model_B = json_io::as_string(
      json_io::require_field(s.payload, "model_B", p), p + ".model_B");
  if (!s.catalog.has(model_A))
    throw UnknownModelError("model '" + model_A + "' referenced at " + p +
                            ".model_A is not registered");
  if (!s.catalog.has(model_B))
    throw UnknownModelError("model '" + model_B + "' referenced at " + p +
                            ".model_B is not registered");
  const auto beta_for = [&](const char* key, const std::string& model) {
    if (!s.payload.contains(key)) return s.catalog.entry(model).default_params;
    const json& b = s.payload.at(key);
    json_io::require_object(b, p + "." + key);
    std::vector<std::pair<std::string, double>> kv;
    for (const auto& [name, value] : b.items())
      kv.emplace_back(name, json_io::as_number(value, p + "." + key + "." + name));
    return s.catalog.params_in_declared_order(model, kv);
  };
  const auto beta_A = beta_for("beta_A", model_A);
  const auto beta_B = beta_for("beta_B", model_B);
  const double E_total = json_io::as_number(
      json_io::require_field(s.payload, "E_total", p), p + ".E_total");

  const auto part = equilibrium::equilibrate_pair(s.catalog, model_A, beta_A,
                                                  model_B, beta_B, E_total,
                                                  s.numerics);
  RunResult res;
  res.output = json_io::partition_to_json(part);
  res.csv = "E_A,E_B,T,S_total,iterations\n" + fmt17(part.A.E) + "," +
            fmt17(part.B.E) + "," + fmt17(part.T) + "," + fmt17(part.S_total) + "," +
            std::to_string(part.iterations) + "\n";

  if (s.payload.contains("scan")) {
    const json& sc = s.payload.at("scan");
    json_io::reject_unknown_keys(sc, {"half_width", "points"}, p + ".scan");
    double half_width = 0.0;
    int points = 41;
    if (sc.contains("half_width"))
      half_width = json_io::as_number(sc.at("half_width"), p + ".scan.half_width");
    if (sc.contains("points"))
      points = json_io::as_int(sc.at("points"), p + ".scan.points");
    const auto scan = equilibrium::max_entropy_scan(s.catalog, part.A, part.B,
                                                    half_width, points, s.numerics);
    res.output["scan"] = json_io::scan_to_json(scan);
    res.csv = json_io::scan_profile_to_csv(scan);
    if (!scan.checks.overall_pass()) res.exit_code = 1;
  }
  return res;
}

RunResult run_audit_reservoir(const Scenario& s) {
  const std::string p = "scenario.payload";
  json_io::reject_unknown_keys(s.payload, {"model", "beta", "grid"}, p);
  const auto model = json_io::as_string(json_io::require_field(s.payload, "model", p),
                                        p + ".model");
  if (!s.catalog.has(model))
    throw UnknownModelError("model '" + model + "' referenced at " + p +
                            ".model is not registered");
  ModelParams beta = s.catalog.entry(model).default_params;
  if (s.payload.contains("beta")) {
    const json& b = s.payload.at("beta");
    json_io::require_object(b, p + ".beta");
    std::vector<std::pair<std::string, double>> kv;
    for (const auto& [name, value] : b.items())
      kv.emplace_back(name, json_io::as_number(value, p + ".beta." + name));
    beta = s.catalog.params_in_declared_order(model, kv);
  }

  // Default grid spans six decades of energy offset above the ground state.
  double off_lo = 1e-2;
  double off_hi = 1e4;
  int points = 25;
  if (s.payload.contains("grid")) {
    const json& g = s.payload.at("grid");
    json_io::reject_unknown_keys(g, {"offset_lo", "offset_hi", "points"},
                                 p + ".grid");
    if (g.contains("offset_lo"))
      off_lo = json_io::as_number(g.at("offset_lo"), p + ".grid.offset_lo");
    if (g.contains("offset_hi"))
      off_hi = json_io::as_number(g.at("offset_hi"), p + ".grid.offset_hi");
    if (g.contains("points"))
      points = json_io::as_int(g.at("points"), p + ".grid.points");
  }
  const double eg = s.catalog.entry(model).relation.e_ground(beta);
  const auto grid = numerics::log_offset_grid(eg, off_lo, off_hi, points);
  const auto rep =
      equilibrium::reservoir_impossibility_audit(s.catalog, model, beta, grid,
                                                 s.numerics);

  RunResult res;
  res.output = json::object();
  res.output["model"] = model;
  res.output["beta"] = json_io::params_to_json(beta);
  res.output["report"] = json_io::report_to_json(rep);
  res.csv = json_io::report_to_csv(rep);
  res.exit_code = rep.overall_pass() ? 0 : 1;
  return res;
}

RunResult run_verify(const Scenario& s) {
  const std::string p = "scenario.payload";
  json_io::reject_unknown_keys(
      s.payload, {"cases_per_check", "include_broken_models", "scan_half_width"}, p);
  verify::VerifyOptions opt;
  opt.seed = s.seed;
  opt.numerics = s.numerics;
  if (s.payload.contains("cases_per_check"))
    opt.cases_per_check =
        json_io::as_int(s.payload.at("cases_per_check"), p + ".cases_per_check");
  if (s.payload.contains("include_broken_models"))
    opt.include_broken_models = json_io::as_bool(
        s.payload.at("include_broken_models"), p + ".include_broken_models");
  if (s.payload.contains("scan_half_width"))
    opt.scan_half_width =
        json_io::as_number(s.payload.at("scan_half_width"), p + ".scan_half_width");

  const auto rep = verify::verify_all(s.catalog, opt);

  RunResult res;
  res.output = json::object();
  res.output["seed"] = opt.seed;
  res.output["cases_per_check"] = opt.cases_per_check;
  res.output["include_broken_models"] = opt.include_broken_models;
  res.output["report"] = json_io::report_to_json(rep);
  res.csv = json_io::report_to_csv(rep);
  res.exit_code = rep.overall_pass() ? 0 : 1;
  return res;
}

}  // namespace

numerics::NumericsConfig ambient_numerics() {
  numerics::NumericsConfig cfg;
  const char* env = std::getenv("AXIOTHERM_NUMERICS");
  if (env == nullptr || *env == '\0') return cfg;
  std::ifstream in(env);
  if (!in)
    throw SchemaError("AXIOTHERM_NUMERICS",
                      std::string("cannot read numerics config file '") + env + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("AXIOTHERM_NUMERICS", e.what());
  }
  return json_io::numerics_overrides(cfg, doc, "AXIOTHERM_NUMERICS");
}

Scenario parse_scenario(const json_io::json& doc,
                        const numerics::NumericsConfig& base,
                        const std::string& path) {
  json_io::reject_unknown_keys(doc, {"command", "seed", "numerics", "models",
                                     "payload"},
                               path);
  Scenario s;
  s.command = json_io::as_string(json_io::require_field(doc, "command", path),
                                 path + ".command");
  bool known = false;
  for (const auto& c : known_commands()) known = known || c == s.command;
  if (!known) {
    std::string all;
    for (const auto& c : known_commands()) all += (all.empty() ? "" : ", ") + c;
    throw SchemaError(path + ".command",
                      "unknown command '" + s.command + "' (expected one of: " +
                          all + ")");
  }

  if (doc.contains("seed")) s.seed = parse_seed(doc.at("seed"), path + ".seed");
  s.numerics = doc.contains("numerics")
                   ? json_io::numerics_overrides(base, doc.at("numerics"),
                                                 path + ".numerics")
                   : base;

  s.catalog = Catalog::with_builtins();
  if (doc.contains("models")) {
    const json& models = doc.at("models");
    if (!models.is_array())
      throw SchemaError(path + ".models", "expected an array of model declarations");
    for (std::size_t i = 0; i < models.size(); ++i)
      register_alias(s.catalog, models[i],
                     path + ".models[" + std::to_string(i) + "]");
  }

  s.payload = doc.contains("payload") ? doc.at("payload") : json::object();
  json_io::require_object(s.payload, path + ".payload");
  return s;
}

RunResult run_scenario(const Scenario& s) {
  if (s.command == "measure-entropy") return run_measure_entropy(s);
  if (s.command == "temperature") return run_temperature(s);
  if (s.command == "equilibrate") return run_equilibrate(s);
  if (s.command == "audit-reservoir") return run_audit_reservoir(s);
  return run_verify(s);
}

RunResult run_scenario_file(const std::string& file_path) {
  std::ifstream in(file_path);
  if (!in)
    throw SchemaError(file_path, "cannot read scenario file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(file_path, e.what());
  }
  const auto s = parse_scenario(doc, ambient_numerics());
  return run_scenario(s);
}

}  // namespace axiotherm::scenario
