#pragma once

#include <string>
#include <vector>

#include "axiotherm/catalog.hpp"
#include "axiotherm/core.hpp"
#include "axiotherm/numerics.hpp"
#include "axiotherm/types.hpp"

namespace axiotherm::processes {

/// One leg of a weight polygonal: the work done by the system in that leg and
/// whether the leg is traversed with or against its stated direction.
struct PolygonalLeg {
  double work = 0.0;
  enum class Direction { forward, backward } direction = Direction::forward;
};

/// Net work done by the system across a polygonal path: forward legs add,
/// backward legs subtract.
[[nodiscard]] double polygonal_work(const std::vector<PolygonalLeg>& legs);

/// Record of one weight process involving system A and meter B. The meter
/// keeps its parameters fixed; all irreversibility is carried by sigma >= 0,
/// and reversible <=> sigma == 0. Energy balance: work_done_by_AB =
/// -(dE_A + dE_B). Entropy balance: dS_B = -dS_A + sigma.
struct WeightProcessRecord {
  ThermoState A_initial;
  ThermoState A_final;
  StableEqState B_initial;
  StableEqState B_final;
  double work_done_by_AB = 0.0;
  double sigma = 0.0;
  bool reversible = true;
};

/// Builds the standard weight process taking A from A1 to A2 while meter B,
/// starting at B_start, absorbs the entropy change: S_B_final =
/// S_B_start - dS_A + sigma. The meter's final energy comes from inverting
/// its fundamental relation.
///
/// Throws std::invalid_argument for sigma < 0 or mismatched A systems,
/// MeterRangeError when the meter's temperature vanishes or its energy would
/// hit the ground state, and propagates state-validation errors.
[[nodiscard]] WeightProcessRecord standard_process(const Catalog& cat,
                                                   const ThermoState& A1,
                                                   const ThermoState& A2,
                                                   const StableEqState& B_start,
                                                   double sigma,
                                                   const numerics::NumericsConfig& cfg = {});

/// Time reversal of a reversible record: swapped end states, negated work.
/// Throws ReversibilityError when the record carries sigma > 0.
[[nodiscard]] WeightProcessRecord reverse(const WeightProcessRecord& proc);

/// Chains records whose shared participants connect end-to-start. The meter
/// must be the same system throughout and must chain exactly. Consecutive
/// non-meter participants either continue one trajectory (states coincide) or
/// belong to different systems, in which case the composite's non-meter ends
/// become assigned-entropy product states (energies and entropies add).
/// Work and sigma add; the composite is reversible iff the total sigma is 0.
[[nodiscard]] WeightProcessRecord compose(const Catalog& cat,
                                          const std::vector<WeightProcessRecord>& legs);

/// Verdict on a proposed cyclic machine: a cycle that extracts positive work
/// while leaving every parameter unchanged is rejected.
struct Pmm2Result {
  bool rejected = false;
  std::string reason;
};

[[nodiscard]] Pmm2Result check_pmm2(const Catalog& cat, const ThermoState& A_start,
                                    double proposed_work_extracted, bool beta_changed);

/// The integral bound for an irreversible record: the meter-side integral
/// -∫ dE/T must fall strictly below the assigned entropy change of A, and the
/// gap reproduces sigma.
struct Lemma7Comparison {
  double integral_bound = 0.0;    ///< -∫ over the meter's energy interval
  double assigned_delta_S = 0.0;  ///< entropy_of(A_final) - entropy_of(A_initial)
  double gap = 0.0;               ///< assigned_delta_S - integral_bound
  bool strictly_below = false;
};

/// Requires sigma > 0; throws ReversibilityError otherwise.
[[nodiscard]] Lemma7Comparison lemma7_bound(const Catalog& cat,
                                            const WeightProcessRecord& proc,
                                            const numerics::NumericsConfig& cfg = {});

}  // namespace axiotherm::processes
