#pragma once

#include <vector>

#include "axiotherm/catalog.hpp"
#include "axiotherm/numerics.hpp"
#include "axiotherm/report.hpp"
#include "axiotherm/types.hpp"

namespace axiotherm {

/// Entropy of a state. Stable states read the fundamental relation; states
/// with an assigned entropy return the assignment verbatim (no registry
/// lookup is needed for them, so synthesized composites work too).
[[nodiscard]] double entropy_of(const Catalog& cat, const ThermoState& state);

/// Temperature of a stable state via the family's closed form when declared,
/// otherwise 1 / (numerical dS/dE).
[[nodiscard]] double temperature_of(const Catalog& cat, const StableEqState& state,
                                    const numerics::NumericsConfig& cfg = {});

/// Temperature forced through the numerical-derivative route regardless of a
/// declared closed form. Exists so the two routes can be compared; collapsing
/// them would make the consistency checks vacuous.
[[nodiscard]] double temperature_numeric(const Catalog& cat, const StableEqState& state,
                                         const numerics::NumericsConfig& cfg = {});

/// Energy with s_se(E, beta) = S_target, found by monotone root-finding on a
/// geometrically expanded bracket above e_ground. Postcondition:
/// |s_se(E) - S_target| <= entropy_abs_tol (up to the representable optimum).
/// Throws DomainError when the target lies below the ground-state branch.
[[nodiscard]] double invert_fundamental(const FundamentalRelation& fr,
                                        const ModelParams& beta, double S_target,
                                        const numerics::NumericsConfig& cfg = {});

/// Structural audit of a relation on a strictly ascending energy grid:
/// strict monotonicity of S, positivity and strict monotonicity of T, decay
/// of T toward e_ground, and closed-form-vs-numeric temperature agreement
/// when the family declares a closed form.
[[nodiscard]] VerificationReport validate_model(const FundamentalRelation& fr,
                                                const ModelParams& beta,
                                                const std::vector<double>& E_grid,
                                                const numerics::NumericsConfig& cfg = {});

/// Validates a state's invariants against the registry: known model, params
/// inside declared intervals, E above ground, and for assigned-entropy states
/// S_assigned strictly below the stable value. Throws on the first violation.
void validate_state(const Catalog& cat, const ThermoState& state);

}  // namespace axiotherm
