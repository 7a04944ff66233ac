#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "axiotherm/errors.hpp"

namespace axiotherm {

/// Declared admissible open interval for one model parameter.
struct ParamSpec {
  std::string name;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool admits(double v) const {
    return std::isfinite(v) && v > lower && v < upper;
  }
};

/// Ordered set of named real parameters (the composition/volume-like
/// coordinates a state carries besides its energy). Order is part of the
/// identity: serialization and comparisons preserve it.
class ModelParams {
 public:
  ModelParams() = default;
  ModelParams(std::initializer_list<std::pair<std::string, double>> kv) {
    for (const auto& [k, v] : kv) set(k, v);
  }

  void set(const std::string& name, double value) {
    for (auto& [k, v] : entries_) {
      if (k == name) {
        v = value;
        return;
      }
    }
    entries_.emplace_back(name, value);
  }

  [[nodiscard]] bool has(const std::string& name) const {
    for (const auto& [k, v] : entries_)
      if (k == name) return true;
    return false;
  }

  [[nodiscard]] double get(const std::string& name) const {
    for (const auto& [k, v] : entries_)
      if (k == name) return v;
    throw std::invalid_argument("model parameter '" + name + "' is not present");
  }

  [[nodiscard]] const std::vector<std::pair<std::string, double>>& entries() const {
    return entries_;
  }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

/// Fundamental relation of one model family: entropy of the stable
/// equilibrium states as a function of energy and parameters, the ground
/// energy below which no stable state exists, and (when the family has one)
/// a closed-form temperature. All units are reduced: k_B = 1, temperature in
/// energy units.
struct FundamentalRelation {
  std::string model_id;
  std::function<double(double E, const ModelParams&)> s_se;
  std::function<double(const ModelParams&)> e_ground;
  /// Optional closed form for T(E, beta); empty when the family only defines S.
  std::function<double(double E, const ModelParams&)> t_closed_form;

  [[nodiscard]] bool has_closed_temperature() const {
    return static_cast<bool>(t_closed_form);
  }
};

/// Stable equilibrium state: fully identified by (model_id, E, beta).
/// Requires E > e_ground(beta); factories and consuming operations enforce it.
struct StableEqState {
  std::string model_id;
  double E = 0.0;
  ModelParams beta;
};

/// Non-equilibrium state. Its entropy is an assigned input, not derived:
/// the engine checks S_assigned < s_se(E, beta) strictly where the model is
/// known, and otherwise takes the assignment at face value.
struct NonEqState {
  std::string model_id;
  double E = 0.0;
  ModelParams beta;
  double S_assigned = 0.0;
};

/// Tagged union over the two state kinds.
using ThermoState = std::variant<StableEqState, NonEqState>;

[[nodiscard]] inline bool is_stable(const ThermoState& s) {
  return std::holds_alternative<StableEqState>(s);
}

[[nodiscard]] inline const std::string& model_of(const ThermoState& s) {
  return is_stable(s) ? std::get<StableEqState>(s).model_id
                      : std::get<NonEqState>(s).model_id;
}

[[nodiscard]] inline double energy_of(const ThermoState& s) {
  return is_stable(s) ? std::get<StableEqState>(s).E : std::get<NonEqState>(s).E;
}

[[nodiscard]] inline const ModelParams& beta_of(const ThermoState& s) {
  return is_stable(s) ? std::get<StableEqState>(s).beta
                      : std::get<NonEqState>(s).beta;
}

/// Entropy difference produced by quadrature, with its accumulated error
/// estimate and the number of accepted panels. abs_error_estimate >= 0 always.
struct EntropyDelta {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int quadrature_panels = 0;
};

/// Tolerance-based state equality used for chaining process records.
/// Parameters must match exactly; energies (and assigned entropies) within
/// rel_tol of their natural scale.
[[nodiscard]] bool states_coincide(const ThermoState& a, const ThermoState& b,
                                   double rel_tol = 1e-9);

}  // namespace axiotherm
