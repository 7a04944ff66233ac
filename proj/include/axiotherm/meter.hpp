#pragma once

#include "axiotherm/catalog.hpp"
#include "axiotherm/core.hpp"
#include "axiotherm/numerics.hpp"
#include "axiotherm/processes.hpp"
#include "axiotherm/types.hpp"

namespace axiotherm::meter {

/// Strictly increasing map between the energy scales of two meters, anchored
/// at a reference pair: eval(E_B) is the energy at which system C has gained
/// exactly the entropy system B gained between domain_ref and E_B. The
/// derivative of this map is the ratio of the two temperatures, which is what
/// makes calibrated temperature readings meter-independent.
class InterconnectionMap {
 public:
  InterconnectionMap(StableEqState domain_ref, StableEqState image_ref,
                     FundamentalRelation domain_rel, FundamentalRelation image_rel,
                     numerics::NumericsConfig cfg);

  [[nodiscard]] const StableEqState& domain_ref() const { return domain_ref_; }
  [[nodiscard]] const StableEqState& image_ref() const { return image_ref_; }

  /// Image energy with equal entropy gain. Throws DomainError for energies at
  /// or below the domain system's ground, MeterRangeError when no image
  /// energy realizes the required entropy change.
  [[nodiscard]] double eval(double E_domain) const;

  /// Preimage of an image-side energy, computed by inverting on the domain
  /// side rather than by root-finding through eval, so the two directions
  /// stay independent cross-checks of each other.
  [[nodiscard]] double inverse(double E_image) const;

  /// Numerical d(eval)/dE. The one_sided flag is inherited from the
  /// differentiation fallback near the domain ground.
  [[nodiscard]] numerics::DerivativeResult derivative_at(double E_domain) const;

 private:
  StableEqState domain_ref_;
  StableEqState image_ref_;
  FundamentalRelation domain_rel_;
  FundamentalRelation image_rel_;
  numerics::NumericsConfig cfg_;
  double S_domain_ref_ = 0.0;
  double S_image_ref_ = 0.0;
};

/// Builds the map anchored at (domain_ref -> image_ref). Both anchors must
/// be valid states of registered models with temperature above the positivity
/// floor; otherwise MeterRangeError.
[[nodiscard]] InterconnectionMap build_map(const Catalog& cat,
                                           const StableEqState& domain_ref,
                                           const StableEqState& image_ref,
                                           const numerics::NumericsConfig& cfg = {});

/// d(eval)/dE at the domain anchor: the image-to-domain temperature ratio at
/// the reference pair.
[[nodiscard]] double temperature_ratio(const InterconnectionMap& map);

/// Anchor state whose temperature is fixed by convention. The default pins
/// the conventional 273.16 at the reference.
struct ReferenceCalibration {
  StableEqState R_ref;
  double T_ref = 273.16;
};

/// Temperature of a stable state measured operationally: T_ref times the
/// derivative of the map between the calibration reference and the state,
/// taken at the reference pair. Never reads the state's closed-form
/// temperature.
[[nodiscard]] double calibrated_temperature(const Catalog& cat,
                                            const ReferenceCalibration& cal,
                                            const StableEqState& state,
                                            const numerics::NumericsConfig& cfg = {});

/// Entropy change of the non-meter participant read off the meter's energy
/// sweep: -integral of dE/T over the meter's interval. Only reversible
/// records qualify; throws ReversibilityError otherwise.
[[nodiscard]] EntropyDelta measure_entropy_difference(
    const Catalog& cat, const processes::WeightProcessRecord& rec,
    const numerics::NumericsConfig& cfg = {});

/// Entropy value propagated from a reference: S0 assigned to A0 plus the
/// measured entropy difference of a reversible process taking A0 to A1
/// against the given meter. Which meter and which reference are used must
/// not matter, and the verification suite checks exactly that.
[[nodiscard]] double entropy_of_state(const Catalog& cat, const ThermoState& A0,
                                      double S0, const ThermoState& A1,
                                      const StableEqState& meter_start,
                                      const numerics::NumericsConfig& cfg = {});

}  // namespace axiotherm::meter
