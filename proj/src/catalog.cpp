#include "axiotherm/catalog.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace axiotherm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_above_ground(const FundamentalRelation& fr, double E,
                          const ModelParams& beta) {
  const double eg = fr.e_ground(beta);
  if (!(E > eg))
    throw DomainError("E = " + fmt(E) + " is at or below e_ground = " + fmt(eg) +
                      " for model '" + fr.model_id + "'");
}

}  // namespace

Catalog Catalog::with_builtins() {
  Catalog c;
  c.register_entry(catalog::monoatomic_ideal_gas());
  c.register_entry(catalog::quasi_reservoir());
  c.register_entry(catalog::power_law_system());
  return c;
}

void Catalog::register_entry(CatalogEntry entry) {
  const std::string& id = entry.relation.model_id;
  if (id.empty()) throw std::invalid_argument("catalog entry needs a model_id");
  if (entries_.count(id))
    throw std::invalid_argument("model '" + id + "' is already registered");
  entries_.emplace(id, std::move(entry));
}

bool Catalog::has(const std::string& model_id) const {
  return entries_.count(model_id) > 0;
}

const CatalogEntry& Catalog::entry(const std::string& model_id) const {
  auto it = entries_.find(model_id);
  if (it == entries_.end())
    throw UnknownModelError("model '" + model_id + "' is not registered");
  return it->second;
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) out.push_back(id);
  return out;
}

void Catalog::check_params(const std::string& model_id, const ModelParams& beta) const {
  const CatalogEntry& e = entry(model_id);
  for (const ParamSpec& spec : e.param_specs) {
    if (!beta.has(spec.name))
      throw std::invalid_argument("model '" + model_id + "' requires parameter '" +
                                  spec.name + "'");
    const double v = beta.get(spec.name);
    if (!spec.admits(v))
      throw std::invalid_argument("parameter '" + spec.name + "' = " + fmt(v) +
                                  " outside the open interval (" + fmt(spec.lower) +
                                  ", " + fmt(spec.upper) + ") for model '" + model_id +
                                  "'");
  }
  if (beta.size() != e.param_specs.size()) {
    for (const auto& [name, v] : beta.entries()) {
      bool declared = false;
      for (const ParamSpec& spec : e.param_specs)
        if (spec.name == name) declared = true;
      if (!declared)
        throw std::invalid_argument("parameter '" + name +
                                    "' is not declared by model '" + model_id + "'");
    }
  }
}

ModelParams Catalog::params_in_declared_order(
    const std::string& model_id,
    const std::vector<std::pair<std::string, double>>& kv) const {
  const CatalogEntry& e = entry(model_id);
  ModelParams beta;
  for (const ParamSpec& spec : e.param_specs) {
    bool found = false;
    for (const auto& [name, v] : kv) {
      if (name == spec.name) {
        beta.set(name, v);
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("model '" + model_id + "' requires parameter '" +
                                  spec.name + "'");
  }
  for (const auto& [name, v] : kv)
    if (!beta.has(name))
      throw std::invalid_argument("parameter '" + name +
                                  "' is not declared by model '" + model_id + "'");
  check_params(model_id, beta);
  return beta;
}

StableEqState Catalog::stable(const std::string& model_id, double E,
                              const ModelParams& beta) const {
  const CatalogEntry& e = entry(model_id);
  check_params(model_id, beta);
  require_above_ground(e.relation, E, beta);
  return StableEqState{model_id, E, beta};
}

StableEqState Catalog::stable(const std::string& model_id, double E) const {
  return stable(model_id, E, entry(model_id).default_params);
}

NonEqState Catalog::noneq(const std::string& model_id, double E,
                          const ModelParams& beta, double S_assigned) const {
  const CatalogEntry& e = entry(model_id);
  check_params(model_id, beta);
  require_above_ground(e.relation, E, beta);
  const double s_eq = e.relation.s_se(E, beta);
  if (!(S_assigned < s_eq))
    throw std::invalid_argument(
        "assigned entropy " + fmt(S_assigned) +
        " must lie strictly below the stable-equilibrium value " + fmt(s_eq) +
        " at the same energy (model '" + model_id + "', E = " + fmt(E) + ")");
  return NonEqState{model_id, E, beta, S_assigned};
}

namespace catalog {

CatalogEntry monoatomic_ideal_gas(double N, double V) {
  if (!(N >= 1.0)) throw std::invalid_argument("ideal_gas requires N >= 1");
  if (!(V > 0.0)) throw std::invalid_argument("ideal_gas requires V > 0");

  FundamentalRelation fr;
  fr.model_id = "ideal_gas";
  fr.s_se = [](double E, const ModelParams& b) {
    const double n = b.get("N");
    const double v = b.get("V");
    if (!(E > 0.0))
      throw DomainError("ideal_gas entropy undefined at E = " + fmt(E));
    return n * (1.5 * std::log(E / n) + std::log(v / n));
  };
  fr.e_ground = [](const ModelParams&) { return 0.0; };
  fr.t_closed_form = [](double E, const ModelParams& b) {
    return 2.0 * E / (3.0 * b.get("N"));
  };

  CatalogEntry e;
  e.relation = std::move(fr);
  e.param_specs = {ParamSpec{"N", 0.0, kInf}, ParamSpec{"V", 0.0, kInf}};
  e.default_params = ModelParams{{"N", N}, {"V", V}};
  e.e_of_s_closed_form = [](double S, const ModelParams& b) {
    const double n = b.get("N");
    const double v = b.get("V");
    return n * std::exp((2.0 / 3.0) * (S / n - std::log(v / n)));
  };
  e.summary = "monoatomic ideal gas, T = 2E/3N";
  return e;
}

CatalogEntry quasi_reservoir(double T0, double C, double E0) {
  if (!(T0 > 0.0)) throw std::invalid_argument("quasi_reservoir requires T0 > 0");
  if (!(C > 0.0)) throw std::invalid_argument("quasi_reservoir requires C > 0");
  if (!std::isfinite(E0))
    throw std::invalid_argument("quasi_reservoir requires finite E0");

  FundamentalRelation fr;
  fr.model_id = "quasi_reservoir";
  fr.s_se = [](double E, const ModelParams& b) {
    const double t0 = b.get("T0");
    const double c = b.get("C");
    const double x = (E - b.get("E0")) / (c * t0);
    if (!(x > -1.0))
      throw DomainError("quasi_reservoir entropy undefined at E = " + fmt(E));
    // log1p keeps precision when C is large and the argument is ~1e-9.
    return c * std::log1p(x);
  };
  fr.e_ground = [](const ModelParams& b) {
    return b.get("E0") - b.get("C") * b.get("T0");
  };
  fr.t_closed_form = [](double E, const ModelParams& b) {
    return b.get("T0") + (E - b.get("E0")) / b.get("C");
  };

  CatalogEntry e;
  e.relation = std::move(fr);
  e.param_specs = {ParamSpec{"T0", 0.0, kInf}, ParamSpec{"C", 0.0, kInf},
                   ParamSpec{"E0", -kInf, kInf}};
  e.default_params = ModelParams{{"T0", T0}, {"C", C}, {"E0", E0}};
  e.e_of_s_closed_form = [](double S, const ModelParams& b) {
    const double c = b.get("C");
    return b.get("E0") + c * b.get("T0") * std::expm1(S / c);
  };
  e.summary = "finite-capacity near-isothermal body, T = T0 + (E-E0)/C";
  return e;
}

CatalogEntry power_law_system(double a, double p, double V) {
  if (!(a > 0.0)) throw std::invalid_argument("power_law requires a > 0");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("power_law requires 0 < p < 1");
  if (!(V > 0.0)) throw std::invalid_argument("power_law requires V > 0");

  FundamentalRelation fr;
  fr.model_id = "power_law";
  fr.s_se = [](double E, const ModelParams& b) {
    if (!(E > 0.0))
      throw DomainError("power_law entropy undefined at E = " + fmt(E));
    return b.get("a") * std::pow(b.get("V"), 1.0 - b.get("p")) *
           std::pow(E, b.get("p"));
  };
  fr.e_ground = [](const ModelParams&) { return 0.0; };
  fr.t_closed_form = [](double E, const ModelParams& b) {
    const double p = b.get("p");
    return std::pow(E, 1.0 - p) /
           (b.get("a") * p * std::pow(b.get("V"), 1.0 - p));
  };

  CatalogEntry e;
  e.relation = std::move(fr);
  e.param_specs = {ParamSpec{"a", 0.0, kInf}, ParamSpec{"p", 0.0, 1.0},
                   ParamSpec{"V", 0.0, kInf}};
  e.default_params = ModelParams{{"a", a}, {"p", p}, {"V", V}};
  e.e_of_s_closed_form = [](double S, const ModelParams& b) {
    const double p = b.get("p");
    return std::pow(S / (b.get("a") * std::pow(b.get("V"), 1.0 - p)), 1.0 / p);
  };
  e.summary = "sub-linear power-law entropy, S = a V^(1-p) E^p";
  return e;
}

}  // namespace catalog

}  // namespace axiotherm
