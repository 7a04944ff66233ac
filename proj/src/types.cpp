#include "axiotherm/types.hpp"

#include <algorithm>

namespace axiotherm {

namespace {

bool close_rel(double a, double b, double rel_tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= rel_tol * scale;
}

}  // namespace

bool states_coincide(const ThermoState& a, const ThermoState& b, double rel_tol) {
  if (is_stable(a) != is_stable(b)) return false;
  if (model_of(a) != model_of(b)) return false;
  if (!(beta_of(a) == beta_of(b))) return false;
  if (!close_rel(energy_of(a), energy_of(b), rel_tol)) return false;
  if (!is_stable(a)) {
    return close_rel(std::get<NonEqState>(a).S_assigned,
                     std::get<NonEqState>(b).S_assigned, rel_tol);
  }
  return true;
}

}  // namespace axiotherm
