#include "axiotherm/meter.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace axiotherm::meter {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_live_anchor(const Catalog& cat, const StableEqState& s,
                         const numerics::NumericsConfig& cfg, const char* role) {
  const double T = temperature_of(cat, s, cfg);
  if (T <= numerics::kTemperatureFloor)
    throw MeterRangeError(std::string(role) + " anchor of '" + s.model_id +
                          "' sits at vanishing temperature (E = " + fmt(s.E) + ")");
}

}  // namespace

InterconnectionMap::InterconnectionMap(StableEqState domain_ref,
                                       StableEqState image_ref,
                                       FundamentalRelation domain_rel,
                                       FundamentalRelation image_rel,
                                       numerics::NumericsConfig cfg)
    : domain_ref_(std::move(domain_ref)),
      image_ref_(std::move(image_ref)),
      domain_rel_(std::move(domain_rel)),
      image_rel_(std::move(image_rel)),
      cfg_(std::move(cfg)) {
  cfg_.validate();
  S_domain_ref_ = domain_rel_.s_se(domain_ref_.E, domain_ref_.beta);
  S_image_ref_ = image_rel_.s_se(image_ref_.E, image_ref_.beta);
}

double InterconnectionMap::eval(double E_domain) const {
  const double shift = domain_rel_.s_se(E_domain, domain_ref_.beta) - S_domain_ref_;
  if (shift == 0.0 && E_domain == domain_ref_.E) return image_ref_.E;
  try {
    return invert_fundamental(image_rel_, image_ref_.beta, S_image_ref_ + shift, cfg_);
  } catch (const DomainError&) {
    throw MeterRangeError("no energy of '" + image_ref_.model_id +
                          "' realizes an entropy change of " + fmt(shift) +
                          " from its reference at E = " + fmt(image_ref_.E));
  }
}

double InterconnectionMap::inverse(double E_image) const {
  const double shift = image_rel_.s_se(E_image, image_ref_.beta) - S_image_ref_;
  if (shift == 0.0 && E_image == image_ref_.E) return domain_ref_.E;
  try {
    return invert_fundamental(domain_rel_, domain_ref_.beta, S_domain_ref_ + shift,
                              cfg_);
  } catch (const DomainError&) {
    throw MeterRangeError("no energy of '" + domain_ref_.model_id +
                          "' realizes an entropy change of " + fmt(shift) +
                          " from its reference at E = " + fmt(domain_ref_.E));
  }
}

numerics::DerivativeResult InterconnectionMap::derivative_at(double E_domain) const {
  const double ground = domain_rel_.e_ground(domain_ref_.beta);
  numerics::DerivOptions opts;
  opts.lo = ground;
  opts.scale = E_domain - ground;
  return numerics::differentiate([this](double e) { return eval(e); }, E_domain,
                                 cfg_, opts);
}

InterconnectionMap build_map(const Catalog& cat, const StableEqState& domain_ref,
                             const StableEqState& image_ref,
                             const numerics::NumericsConfig& cfg) {
  validate_state(cat, ThermoState{domain_ref});
  validate_state(cat, ThermoState{image_ref});
  require_live_anchor(cat, domain_ref, cfg, "domain");
  require_live_anchor(cat, image_ref, cfg, "image");
  return InterconnectionMap(domain_ref, image_ref,
                            cat.entry(domain_ref.model_id).relation,
                            cat.entry(image_ref.model_id).relation, cfg);
}

double temperature_ratio(const InterconnectionMap& map) {
  return map.derivative_at(map.domain_ref().E).value;
}

double calibrated_temperature(const Catalog& cat, const ReferenceCalibration& cal,
                              const StableEqState& state,
                              const numerics::NumericsConfig& cfg) {
  if (!(cal.T_ref > 0.0) || !std::isfinite(cal.T_ref))
    throw std::invalid_argument("calibration temperature must be finite and > 0, got " +
                                fmt(cal.T_ref));
  // The derivative is taken on the state->reference map: probing there keeps
  // the finite-difference entropy excursion at the scale of the state's own
  // geometry, and the reference side absorbs it. The two directions are
  // reciprocal, which the verification suite checks on its own.
  const auto map = build_map(cat, state, cal.R_ref, cfg);
  const double slope = temperature_ratio(map);
  if (!(slope > 0.0))
    throw InvariantViolationError("interconnection map slope came out non-positive (" +
                                  fmt(slope) + ") for '" + state.model_id + "'");
  return cal.T_ref / slope;
}

EntropyDelta measure_entropy_difference(const Catalog& cat,
                                        const processes::WeightProcessRecord& rec,
                                        const numerics::NumericsConfig& cfg) {
  if (!rec.reversible || rec.sigma != 0.0)
    throw ReversibilityError(
        "entropy differences are read off reversible records only; this one has "
        "sigma = " + fmt(rec.sigma));
  const CatalogEntry& meter = cat.entry(rec.B_initial.model_id);
  EntropyDelta d = numerics::integrate_inverse_T(meter.relation, rec.B_initial.beta,
                                                 rec.B_initial.E, rec.B_final.E, cfg);
  d.value = -d.value;
  return d;
}

double entropy_of_state(const Catalog& cat, const ThermoState& A0, double S0,
                        const ThermoState& A1, const StableEqState& meter_start,
                        const numerics::NumericsConfig& cfg) {
  if (!std::isfinite(S0))
    throw std::invalid_argument("reference entropy must be finite");
  const auto rec = processes::standard_process(cat, A0, A1, meter_start, 0.0, cfg);
  return S0 + measure_entropy_difference(cat, rec, cfg).value;
}

}  // namespace axiotherm::meter
