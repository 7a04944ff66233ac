#include "axiotherm/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace axiotherm::json_io {

namespace {

std::string fmt17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string kind_of(const json& v) {
  switch (v.type()) {
    case json::value_t::null: return "null";
    case json::value_t::object: return "object";
    case json::value_t::array: return "array";
    case json::value_t::string: return "string";
    case json::value_t::boolean: return "boolean";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float: return "number";
    default: return "unsupported";
  }
}

/// CSV field quoting: commas, quotes and newlines force a quoted field with
/// inner quotes doubled, so detail strings survive a round trip.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

const json& require_field(const json& obj, const std::string& key,
                          const std::string& path) {
  require_object(obj, path);
  const auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError(path + "." + key, "required field is missing");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number, got " + kind_of(v));
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer())
    throw SchemaError(path, "expected an integer, got " + kind_of(v));
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean())
    throw SchemaError(path, "expected a boolean, got " + kind_of(v));
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string())
    throw SchemaError(path, "expected a string, got " + kind_of(v));
  return v.get<std::string>();
}

void require_object(const json& v, const std::string& path) {
  if (!v.is_object())
    throw SchemaError(path, "expected an object, got " + kind_of(v));
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
  require_object(obj, path);
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw SchemaError(path + "." + key, "unknown field");
  }
}

json params_to_json(const ModelParams& beta) {
  json out = json::object();
  for (const auto& [name, value] : beta.entries()) out[name] = value;
  return out;
}

json state_to_json(const ThermoState& state) {
  json out = json::object();
  out["model"] = model_of(state);
  out["E"] = energy_of(state);
  out["beta"] = params_to_json(beta_of(state));
  if (!is_stable(state))
    out["S_assigned"] = std::get<NonEqState>(state).S_assigned;
  return out;
}

namespace {

struct ParsedState {
  std::string model;
  double E = 0.0;
  ModelParams beta;
  bool has_assigned = false;
  double S_assigned = 0.0;
};

ParsedState parse_state_fields(const Catalog& cat, const json& v,
                               const std::string& path) {
  reject_unknown_keys(v, {"model", "E", "beta", "S_assigned"}, path);
  ParsedState p;
  p.model = as_string(require_field(v, "model", path), path + ".model");
  if (!cat.has(p.model))
    throw UnknownModelError("model '" + p.model + "' referenced at " + path +
                            " is not registered");
  p.E = as_number(require_field(v, "E", path), path + ".E");
  if (v.contains("beta")) {
    const json& b = v.at("beta");
    require_object(b, path + ".beta");
    std::vector<std::pair<std::string, double>> kv;
    for (const auto& [name, value] : b.items())
      kv.emplace_back(name, as_number(value, path + ".beta." + name));
    p.beta = cat.params_in_declared_order(p.model, kv);
  } else {
    p.beta = cat.entry(p.model).default_params;
  }
  if (v.contains("S_assigned")) {
    p.has_assigned = true;
    p.S_assigned = as_number(v.at("S_assigned"), path + ".S_assigned");
  }
  return p;
}

}  // namespace

ThermoState state_from_json(const Catalog& cat, const json& v,
                            const std::string& path) {
  const auto p = parse_state_fields(cat, v, path);
  if (p.has_assigned)
    return ThermoState{cat.noneq(p.model, p.E, p.beta, p.S_assigned)};
  return ThermoState{cat.stable(p.model, p.E, p.beta)};
}

StableEqState stable_from_json(const Catalog& cat, const json& v,
                               const std::string& path) {
  const auto p = parse_state_fields(cat, v, path);
  if (p.has_assigned)
    throw SchemaError(path + ".S_assigned",
                      "a stable equilibrium state cannot carry an assigned entropy");
  return cat.stable(p.model, p.E, p.beta);
}

json numerics_to_json(const numerics::NumericsConfig& cfg) {
  json out = json::object();
  out["quad_rel_tol"] = cfg.quad_rel_tol;
  out["quad_abs_tol"] = cfg.quad_abs_tol;
  out["root_tol"] = cfg.root_tol;
  out["deriv_initial_step"] = cfg.deriv_initial_step;
  out["deriv_step_floor"] = cfg.deriv_step_floor;
  out["max_refinements"] = cfg.max_refinements;
  out["richardson_levels"] = cfg.richardson_levels;
  out["entropy_abs_tol"] = cfg.entropy_abs_tol;
  return out;
}

numerics::NumericsConfig numerics_overrides(numerics::NumericsConfig base,
                                            const json& v, const std::string& path) {
  reject_unknown_keys(v,
                      {"quad_rel_tol", "quad_abs_tol", "root_tol",
                       "deriv_initial_step", "deriv_step_floor", "max_refinements",
                       "richardson_levels", "entropy_abs_tol"},
                      path);
  if (v.contains("quad_rel_tol"))
    base.quad_rel_tol = as_number(v.at("quad_rel_tol"), path + ".quad_rel_tol");
  if (v.contains("quad_abs_tol"))
    base.quad_abs_tol = as_number(v.at("quad_abs_tol"), path + ".quad_abs_tol");
  if (v.contains("root_tol"))
    base.root_tol = as_number(v.at("root_tol"), path + ".root_tol");
  if (v.contains("deriv_initial_step"))
    base.deriv_initial_step =
        as_number(v.at("deriv_initial_step"), path + ".deriv_initial_step");
  if (v.contains("deriv_step_floor"))
    base.deriv_step_floor =
        as_number(v.at("deriv_step_floor"), path + ".deriv_step_floor");
  if (v.contains("max_refinements"))
    base.max_refinements = as_int(v.at("max_refinements"), path + ".max_refinements");
  if (v.contains("richardson_levels"))
    base.richardson_levels =
        as_int(v.at("richardson_levels"), path + ".richardson_levels");
  if (v.contains("entropy_abs_tol"))
    base.entropy_abs_tol =
        as_number(v.at("entropy_abs_tol"), path + ".entropy_abs_tol");
  try {
    base.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
  return base;
}

json delta_to_json(const EntropyDelta& d) {
  json out = json::object();
  out["value"] = d.value;
  out["abs_error_estimate"] = d.abs_error_estimate;
  out["quadrature_panels"] = d.quadrature_panels;
  return out;
}

json report_to_json(const VerificationReport& rep) {
  json checks = json::array();
  for (const auto& e : rep.entries) {
    json c = json::object();
    c["check_id"] = e.check_id;
    c["passed"] = e.passed;
    c["residual"] = e.residual;
    c["tolerance"] = e.tolerance;
    c["cases_run"] = e.cases_run;
    c["detail"] = e.detail;
    checks.push_back(std::move(c));
  }
  json out = json::object();
  out["overall_pass"] = rep.overall_pass();
  out["checks"] = std::move(checks);
  return out;
}

std::string report_to_csv(const VerificationReport& rep) {
  std::string out = "check_id,passed,residual,tolerance,cases_run,detail\n";
  for (const auto& e : rep.entries) {
    out += csv_escape(e.check_id);
    out += e.passed ? ",true," : ",false,";
    out += fmt17(e.residual);
    out += ",";
    out += fmt17(e.tolerance);
    out += ",";
    out += std::to_string(e.cases_run);
    out += ",";
    out += csv_escape(e.detail);
    out += "\n";
  }
  return out;
}

json partition_to_json(const equilibrium::PartitionResult& part) {
  json out = json::object();
  out["A"] = state_to_json(ThermoState{part.A});
  out["B"] = state_to_json(ThermoState{part.B});
  out["T"] = part.T;
  out["S_total"] = part.S_total;
  out["iterations"] = part.iterations;
  return out;
}

json scan_to_json(const equilibrium::ScanResult& scan) {
  json profile = json::array();
  for (const auto& pt : scan.profile) {
    json p = json::object();
    p["epsilon"] = pt.epsilon;
    p["S_total"] = pt.S_total;
    p["dS_deps"] = pt.dS_deps;
    profile.push_back(std::move(p));
  }
  json out = json::object();
  out["half_width"] = scan.half_width;
  out["profile"] = std::move(profile);
  out["checks"] = report_to_json(scan.checks);
  return out;
}

std::string scan_profile_to_csv(const equilibrium::ScanResult& scan) {
  std::string out = "epsilon,S_total,dS_deps\n";
  for (const auto& pt : scan.profile) {
    out += fmt17(pt.epsilon);
    out += ",";
    out += fmt17(pt.S_total);
    out += ",";
    out += fmt17(pt.dS_deps);
    out += "\n";
  }
  return out;
}

json forces_to_json(const equilibrium::GibbsForces& g) {
  json forces = json::array();
  bool has_volume = false;
  for (const auto& f : g.forces) {
    if (f.name == "V") has_volume = true;
    json o = json::object();
    o["name"] = f.name;
    o["value"] = f.value;
    o["abs_error_estimate"] = f.abs_error_estimate;
    o["one_sided"] = f.one_sided;
    forces.push_back(std::move(o));
  }
  json out = json::object();
  out["T"] = g.T;
  out["S"] = g.S;
  out["forces"] = std::move(forces);
  if (has_volume) out["pressure"] = g.pressure();
  return out;
}

}  // namespace axiotherm::json_io
