#pragma once

#include <map>
#include <string>
#include <vector>

#include "axiotherm/types.hpp"

namespace axiotherm {

/// One registered model family: its fundamental relation, the declared
/// parameter schema, convenience defaults, and closed-form shortcuts used as
/// independent cross-checks against the numerical paths.
struct CatalogEntry {
  FundamentalRelation relation;
  std::vector<ParamSpec> param_specs;
  ModelParams default_params;
  /// Optional closed-form inverse E(S, beta); empty when unavailable.
  std::function<double(double S, const ModelParams&)> e_of_s_closed_form;
  std::string summary;
};

/// Immutable-after-setup registry of model families keyed by model_id.
/// All read operations are const and thread-safe once registration is done.
class Catalog {
 public:
  /// Registry preloaded with the three built-in families under their
  /// canonical ids ("ideal_gas", "quasi_reservoir", "power_law").
  [[nodiscard]] static Catalog with_builtins();

  /// Throws std::invalid_argument when the id is already registered.
  void register_entry(CatalogEntry entry);

  [[nodiscard]] bool has(const std::string& model_id) const;
  [[nodiscard]] const CatalogEntry& entry(const std::string& model_id) const;
  [[nodiscard]] std::vector<std::string> ids() const;

  /// Validates beta against the entry's declared schema: exactly the declared
  /// names, every value finite and inside its open interval.
  void check_params(const std::string& model_id, const ModelParams& beta) const;

  /// Builds beta in declared order from name/value pairs. Every declared
  /// name must be present; extras are rejected. Ordering is canonicalized so
  /// states built from JSON compare equal to states built in code.
  [[nodiscard]] ModelParams params_in_declared_order(
      const std::string& model_id,
      const std::vector<std::pair<std::string, double>>& kv) const;

  /// Validating state factories. Throw UnknownModelError / DomainError /
  /// std::invalid_argument on contract violations.
  [[nodiscard]] StableEqState stable(const std::string& model_id, double E,
                                     const ModelParams& beta) const;
  [[nodiscard]] StableEqState stable(const std::string& model_id, double E) const;
  [[nodiscard]] NonEqState noneq(const std::string& model_id, double E,
                                 const ModelParams& beta, double S_assigned) const;

 private:
  std::map<std::string, CatalogEntry> entries_;
};

namespace catalog {

/// Monoatomic ideal gas, S(E) = N [ (3/2) ln(E/N) + ln(V/N) ], ground at 0.
/// Requires N >= 1 and V > 0.
[[nodiscard]] CatalogEntry monoatomic_ideal_gas(double N = 1.0, double V = 1.0);

/// Large-but-finite heat-capacity body, S(E) = C ln(1 + (E - E0)/(C T0)).
/// Temperature drifts as (E - E0)/C, so no admissible parameter choice yields
/// a constant-temperature system. Requires T0 > 0 and C > 0.
[[nodiscard]] CatalogEntry quasi_reservoir(double T0 = 273.16, double C = 1e6,
                                           double E0 = 0.0);

/// Power-law family, S(E) = a V^(1-p) E^p with 0 < p < 1, ground at 0.
/// Requires a > 0 and V > 0.
[[nodiscard]] CatalogEntry power_law_system(double a = 1.0, double p = 0.75,
                                            double V = 1.0);

}  // namespace catalog

}  // namespace axiotherm
