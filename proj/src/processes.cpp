#include "axiotherm/processes.hpp"

#include <cmath>
#include <sstream>

namespace axiotherm::processes {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// States of systems the registry knows are validated in full; assigned-
/// entropy states of synthesized systems (composite products) are only
/// checked for finiteness, since their entropy is definitional.
void validate_participant(const Catalog& cat, const ThermoState& s) {
  if (!is_stable(s) && !cat.has(model_of(s))) {
    const auto& ne = std::get<NonEqState>(s);
    if (!std::isfinite(ne.E) || !std::isfinite(ne.S_assigned))
      throw std::invalid_argument("assigned-entropy state of '" + ne.model_id +
                                  "' has non-finite fields");
    return;
  }
  validate_state(cat, s);
}

ThermoState product_state(const Catalog& cat, const ThermoState& a,
                          const ThermoState& b) {
  NonEqState prod;
  prod.model_id = model_of(a) + "+" + model_of(b);
  prod.E = energy_of(a) + energy_of(b);
  prod.S_assigned = entropy_of(cat, a) + entropy_of(cat, b);
  return prod;
}

}  // namespace

double polygonal_work(const std::vector<PolygonalLeg>& legs) {
  double total = 0.0;
  for (const auto& leg : legs) {
    if (!std::isfinite(leg.work))
      throw std::invalid_argument("polygonal leg work must be finite");
    total += leg.direction == PolygonalLeg::Direction::forward ? leg.work : -leg.work;
  }
  return total;
}

WeightProcessRecord standard_process(const Catalog& cat, const ThermoState& A1,
                                     const ThermoState& A2,
                                     const StableEqState& B_start, double sigma,
                                     const numerics::NumericsConfig& cfg) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw std::invalid_argument("sigma must be finite and >= 0, got " + fmt(sigma));
  validate_participant(cat, A1);
  validate_participant(cat, A2);
  if (model_of(A1) != model_of(A2))
    throw std::invalid_argument("A_initial and A_final belong to different systems ('" +
                                model_of(A1) + "' vs '" + model_of(A2) + "')");
  (void)cat.stable(B_start.model_id, B_start.E, B_start.beta);

  const CatalogEntry& meter = cat.entry(B_start.model_id);
  const double T_start = temperature_of(cat, B_start, cfg);
  if (T_start <= numerics::kTemperatureFloor)
    throw MeterRangeError("meter '" + B_start.model_id +
                          "' temperature vanishes at its start energy " +
                          fmt(B_start.E));

  const double dS_A = entropy_of(cat, A2) - entropy_of(cat, A1);
  const double S_B1 = meter.relation.s_se(B_start.E, B_start.beta);
  const double shift = -dS_A + sigma;

  StableEqState B_final = B_start;
  if (shift != 0.0) {
    try {
      B_final.E = invert_fundamental(meter.relation, B_start.beta, S_B1 + shift, cfg);
    } catch (const DomainError&) {
      throw MeterRangeError("meter '" + B_start.model_id +
                            "' cannot absorb an entropy change of " + fmt(shift) +
                            " from E = " + fmt(B_start.E) +
                            " without reaching its ground state");
    }
    const double T_final = temperature_of(cat, B_final, cfg);
    if (T_final <= numerics::kTemperatureFloor)
      throw MeterRangeError("meter '" + B_start.model_id +
                            "' temperature vanishes at its final energy " +
                            fmt(B_final.E));
  }

  WeightProcessRecord rec;
  rec.A_initial = A1;
  rec.A_final = A2;
  rec.B_initial = B_start;
  rec.B_final = B_final;
  rec.work_done_by_AB =
      -((energy_of(A2) - energy_of(A1)) + (B_final.E - B_start.E));
  rec.sigma = sigma;
  rec.reversible = sigma == 0.0;
  return rec;
}

WeightProcessRecord reverse(const WeightProcessRecord& proc) {
  if (!proc.reversible || proc.sigma != 0.0)
    throw ReversibilityError("only reversible records can be reversed (sigma = " +
                             fmt(proc.sigma) + ")");
  WeightProcessRecord rev;
  rev.A_initial = proc.A_final;
  rev.A_final = proc.A_initial;
  rev.B_initial = proc.B_final;
  rev.B_final = proc.B_initial;
  rev.work_done_by_AB = -proc.work_done_by_AB;
  rev.sigma = 0.0;
  rev.reversible = true;
  return rev;
}

WeightProcessRecord compose(const Catalog& cat,
                            const std::vector<WeightProcessRecord>& legs) {
  if (legs.empty()) throw std::invalid_argument("compose requires at least one leg");

  WeightProcessRecord out = legs.front();
  for (std::size_t k = 1; k < legs.size(); ++k) {
    const WeightProcessRecord& leg = legs[k];

    // The meter is shared by construction: same system, exact state chaining.
    if (out.B_final.model_id != leg.B_initial.model_id ||
        !(out.B_final.beta == leg.B_initial.beta))
      throw CompositionError("legs " + std::to_string(k - 1) + " and " +
                             std::to_string(k) + " use different meters ('" +
                             out.B_final.model_id + "' vs '" + leg.B_initial.model_id +
                             "')");
    if (!states_coincide(ThermoState{out.B_final}, ThermoState{leg.B_initial}))
      throw CompositionError("meter state does not chain between legs " +
                             std::to_string(k - 1) + " and " + std::to_string(k) +
                             ": E = " + fmt(out.B_final.E) + " vs " +
                             fmt(leg.B_initial.E));

    const bool same_system = model_of(out.A_final) == model_of(leg.A_initial) &&
                             beta_of(out.A_final) == beta_of(leg.A_initial);
    if (states_coincide(out.A_final, leg.A_initial)) {
      out.A_final = leg.A_final;
    } else if (!same_system) {
      // Disjoint participants: the composite acts on their product. Energies
      // and entropies are additive, so the balances keep holding exactly.
      out.A_initial = product_state(cat, out.A_initial, leg.A_initial);
      out.A_final = product_state(cat, out.A_final, leg.A_final);
    } else {
      throw CompositionError("participant '" + model_of(leg.A_initial) +
                             "' does not chain between legs " + std::to_string(k - 1) +
                             " and " + std::to_string(k));
    }

    out.B_final = leg.B_final;
    out.work_done_by_AB += leg.work_done_by_AB;
    out.sigma += leg.sigma;
  }
  out.reversible = out.sigma == 0.0;
  return out;
}

Pmm2Result check_pmm2(const Catalog& cat, const ThermoState& A_start,
                      double proposed_work_extracted, bool beta_changed) {
  validate_participant(cat, A_start);
  if (!std::isfinite(proposed_work_extracted))
    throw std::invalid_argument("proposed work must be finite");

  Pmm2Result res;
  if (proposed_work_extracted > 0.0 && !beta_changed) {
    res.rejected = true;
    res.reason = "cycle extracts positive work (" + fmt(proposed_work_extracted) +
                 ") with every parameter unchanged";
  } else {
    res.rejected = false;
    res.reason = proposed_work_extracted > 0.0
                     ? "positive work is accompanied by a parameter change"
                     : "no positive work is extracted";
  }
  return res;
}

Lemma7Comparison lemma7_bound(const Catalog& cat, const WeightProcessRecord& proc,
                              const numerics::NumericsConfig& cfg) {
  if (!(proc.sigma > 0.0))
    throw ReversibilityError("the integral bound applies to irreversible records; "
                             "this one has sigma = " + fmt(proc.sigma));
  const CatalogEntry& meter = cat.entry(proc.B_initial.model_id);
  const EntropyDelta d = numerics::integrate_inverse_T(
      meter.relation, proc.B_initial.beta, proc.B_initial.E, proc.B_final.E, cfg);

  Lemma7Comparison cmp;
  cmp.integral_bound = -d.value;
  cmp.assigned_delta_S = entropy_of(cat, proc.A_final) - entropy_of(cat, proc.A_initial);
  cmp.gap = cmp.assigned_delta_S - cmp.integral_bound;
  cmp.strictly_below = cmp.integral_bound < cmp.assigned_delta_S;
  return cmp;
}

}  // namespace axiotherm::processes
