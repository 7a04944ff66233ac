#pragma once

#include <string>
#include <vector>

#include "axiotherm/catalog.hpp"
#include "axiotherm/core.hpp"
#include "axiotherm/numerics.hpp"
#include "axiotherm/report.hpp"
#include "axiotherm/types.hpp"

namespace axiotherm::equilibrium {

/// Energy split of a fixed total between two systems at equal temperature.
struct PartitionResult {
  StableEqState A;
  StableEqState B;
  double T = 0.0;        ///< common temperature at the split
  double S_total = 0.0;  ///< S_A + S_B at the split
  int iterations = 0;    ///< root-solver iterations spent
};

/// Splits E_total between the two systems so their temperatures match, by
/// solving T_A(E_A) - T_B(E_total - E_A) = 0 over the admissible interval.
/// Both temperatures are strictly increasing in their own energy, so the
/// difference is strictly increasing in E_A and the split is unique.
///
/// Throws DomainError when E_total leaves no admissible interval above the
/// two grounds, and propagates solver errors.
[[nodiscard]] PartitionResult equilibrate_pair(const Catalog& cat,
                                               const std::string& model_A,
                                               const ModelParams& beta_A,
                                               const std::string& model_B,
                                               const ModelParams& beta_B,
                                               double E_total,
                                               const numerics::NumericsConfig& cfg = {});

/// One sample of the energy-transfer scan around a candidate split.
struct ScanPoint {
  double epsilon = 0.0;   ///< energy moved from B to A
  double S_total = 0.0;   ///< S_A(E_A + eps) + S_B(E_B - eps)
  double dS_deps = 0.0;   ///< 1/T_A(E_A + eps) - 1/T_B(E_B - eps)
};

struct ScanResult {
  std::vector<ScanPoint> profile;
  VerificationReport checks;
  double half_width = 0.0;  ///< half-width actually scanned
};

/// Samples the total entropy against energy transfers eps around the given
/// pair and checks the maximum-entropy characterization of equilibrium:
///   scan-interior-strict-maximum  every off-center sample is strictly below
///                                 the center,
///   scan-slope-sign-pattern      dS/deps is positive left of center,
///                                 negative right of it, and vanishes at the
///                                 center within 1e-8 / T.
///
/// half_width <= 0 picks half the smaller ground clearance of the two sides.
/// n must be odd and >= 5 so the center is sampled. The scan reports; it
/// never throws on a failed check.
[[nodiscard]] ScanResult max_entropy_scan(const Catalog& cat, const StableEqState& A,
                                          const StableEqState& B,
                                          double half_width = 0.0, int n = 41,
                                          const numerics::NumericsConfig& cfg = {});

/// True when the two states' temperatures agree within rel_tol.
[[nodiscard]] bool mutual_equilibrium_predicate(const Catalog& cat,
                                                const StableEqState& a,
                                                const StableEqState& b,
                                                const numerics::NumericsConfig& cfg = {},
                                                double rel_tol = 1e-8);

/// Conjugate force of one model parameter: dE(S, beta)/dbeta_j at fixed S.
struct GeneralizedForce {
  std::string name;
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool one_sided = false;  ///< parameter sat too close to its interval edge
};

/// Forces of every declared parameter at a stable state, in declared order,
/// each obtained by re-inverting the fundamental relation at perturbed
/// parameters and fixed entropy.
struct GibbsForces {
  double T = 0.0;
  double S = 0.0;
  std::vector<GeneralizedForce> forces;

  /// -F_V. Throws std::invalid_argument when the model has no "V".
  [[nodiscard]] double pressure() const;
};

[[nodiscard]] GibbsForces gibbs_forces(const Catalog& cat, const StableEqState& state,
                                       const numerics::NumericsConfig& cfg = {});

/// Grid audit of the claim that no admissible model holds its temperature
/// constant. Entries:
///   audit-T-positive                 minimum temperature on the grid
///   audit-T-strictly-increasing      minimum adjacent temperature increment
///   audit-no-duplicate-temperatures  minimum adjacent relative gap vs 1e-12
///   audit-temperature-drift          relative drift across the grid vs 1e-9
[[nodiscard]] VerificationReport reservoir_impossibility_audit(
    const Catalog& cat, const std::string& model_id, const ModelParams& beta,
    const std::vector<double>& E_grid, const numerics::NumericsConfig& cfg = {});

}  // namespace axiotherm::equilibrium
