#include "axiotherm/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace axiotherm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double relation_entropy(const FundamentalRelation& fr, double E,
                        const ModelParams& beta) {
  const double eg = fr.e_ground(beta);
  if (!(E > eg))
    throw DomainError("E = " + fmt(E) + " is at or below e_ground = " + fmt(eg) +
                      " for model '" + fr.model_id + "'");
  return fr.s_se(E, beta);
}

}  // namespace

double entropy_of(const Catalog& cat, const ThermoState& state) {
  if (is_stable(state)) {
    const auto& s = std::get<StableEqState>(state);
    const CatalogEntry& e = cat.entry(s.model_id);
    return relation_entropy(e.relation, s.E, s.beta);
  }
  return std::get<NonEqState>(state).S_assigned;
}

double temperature_of(const Catalog& cat, const StableEqState& state,
                      const numerics::NumericsConfig& cfg) {
  const CatalogEntry& e = cat.entry(state.model_id);
  const double eg = e.relation.e_ground(state.beta);
  if (!(state.E > eg))
    throw DomainError("E = " + fmt(state.E) + " is at or below e_ground = " + fmt(eg) +
                      " for model '" + state.model_id + "'");
  return numerics::temperature_from_relation(e.relation, state.E, state.beta, cfg);
}

double temperature_numeric(const Catalog& cat, const StableEqState& state,
                           const numerics::NumericsConfig& cfg) {
  const CatalogEntry& e = cat.entry(state.model_id);
  FundamentalRelation stripped = e.relation;
  stripped.t_closed_form = nullptr;
  const double eg = stripped.e_ground(state.beta);
  if (!(state.E > eg))
    throw DomainError("E = " + fmt(state.E) + " is at or below e_ground = " + fmt(eg) +
                      " for model '" + state.model_id + "'");
  return numerics::temperature_from_relation(stripped, state.E, state.beta, cfg);
}

double invert_fundamental(const FundamentalRelation& fr, const ModelParams& beta,
                          double S_target, const numerics::NumericsConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(S_target))
    throw std::invalid_argument("invert_fundamental requires a finite entropy target");
  const double eg = fr.e_ground(beta);

  // Bracket the offset d = E - e_ground geometrically: entropy is strictly
  // increasing in E, so in u = ln d the problem stays monotone and the
  // bracket-width tolerance becomes relative accuracy on the offset.
  double d_hi = std::max(1.0, std::abs(eg));
  double s_hi = fr.s_se(eg + d_hi, beta);
  int guard = 0;
  while (s_hi < S_target) {
    d_hi *= 4.0;
    if (!std::isfinite(d_hi) || ++guard > 600)
      throw DomainError("entropy target " + fmt(S_target) +
                        " is above the reachable range of model '" + fr.model_id + "'");
    s_hi = fr.s_se(eg + d_hi, beta);
  }
  double d_lo = d_hi;
  double s_lo = s_hi;
  guard = 0;
  while (s_lo > S_target) {
    d_lo /= 4.0;
    if (d_lo < 1e-280 || ++guard > 600)
      throw DomainError("entropy target " + fmt(S_target) +
                        " lies below the ground-state branch of model '" + fr.model_id +
                        "'");
    s_lo = fr.s_se(eg + d_lo, beta);
  }
  if (s_lo == S_target) return eg + d_lo;
  if (s_hi == S_target) return eg + d_hi;

  auto s_of_u = [&](double u) { return fr.s_se(eg + std::exp(u), beta); };
  const numerics::RootResult r =
      numerics::solve_monotone(s_of_u, S_target, std::log(d_lo), std::log(d_hi), cfg,
                               cfg.entropy_abs_tol);
  double E = eg + std::exp(r.root);

  // The log-space solve is bracket-robust but one ulp of u is many ulps of E
  // for relations whose ground sits far away. A few Newton steps in E-space
  // (dS/dE = 1/T) recover the representable optimum.
  double T = numerics::temperature_from_relation(fr, E, beta, cfg);
  for (int i = 0; i < 3; ++i) {
    const double resid_i = fr.s_se(E, beta) - S_target;
    if (std::abs(resid_i) <= cfg.entropy_abs_tol) break;
    double next = E - resid_i * T;
    if (!(next > eg)) next = 0.5 * (E + eg);
    if (next == E) break;
    E = next;
    T = numerics::temperature_from_relation(fr, E, beta, cfg);
  }

  // The residual cannot beat the entropy change across one ulp of E; accept
  // the representable optimum, reject anything worse.
  const double ulp_limit = 8.0 * kEps * std::max(std::abs(E), std::abs(eg)) / T;
  const double resid = std::abs(fr.s_se(E, beta) - S_target);
  if (resid > std::max(cfg.entropy_abs_tol, ulp_limit))
    throw ConvergenceError("inversion residual " + fmt(resid) +
                           " exceeds the entropy tolerance " +
                           fmt(cfg.entropy_abs_tol) + " for model '" + fr.model_id +
                           "'");
  return E;
}

VerificationReport validate_model(const FundamentalRelation& fr, const ModelParams& beta,
                                  const std::vector<double>& E_grid,
                                  const numerics::NumericsConfig& cfg) {
  cfg.validate();
  if (E_grid.size() < 3)
    throw std::invalid_argument("validate_model needs at least 3 grid energies");
  const double eg = fr.e_ground(beta);
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    if (!(E_grid[i] > eg))
      throw std::invalid_argument("grid energy " + fmt(E_grid[i]) +
                                  " is not above e_ground = " + fmt(eg));
    if (i > 0 && !(E_grid[i] > E_grid[i - 1]))
      throw std::invalid_argument("grid energies must be strictly ascending");
  }

  VerificationReport report;
  const int n = static_cast<int>(E_grid.size());

  std::vector<double> S(E_grid.size());
  for (std::size_t i = 0; i < E_grid.size(); ++i) S[i] = fr.s_se(E_grid[i], beta);
  double min_dS = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < S.size(); ++i) min_dS = std::min(min_dS, S[i] - S[i - 1]);
  report.add(CheckEntry{"S-strictly-increasing", min_dS > 0.0, min_dS, 0.0, n - 1,
                        "min adjacent entropy increment on the grid"});

  std::vector<double> T(E_grid.size());
  bool t_ok = true;
  double min_T = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < E_grid.size(); ++i) {
    try {
      T[i] = numerics::temperature_from_relation(fr, E_grid[i], beta, cfg);
    } catch (const InvariantViolationError&) {
      // Keep auditing: record the slope-derived temperature as non-positive.
      numerics::DerivOptions opts;
      opts.lo = eg;
      opts.scale = E_grid[i] - eg;
      const auto d = numerics::differentiate(
          [&](double e) { return fr.s_se(e, beta); }, E_grid[i], cfg, opts);
      T[i] = d.value == 0.0 ? 0.0 : 1.0 / d.value;
      t_ok = false;
    }
    min_T = std::min(min_T, T[i]);
  }
  report.add(CheckEntry{"T-positive", t_ok && min_T > 0.0, min_T, 0.0, n,
                        "min temperature on the grid"});

  double min_dT = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < T.size(); ++i) min_dT = std::min(min_dT, T[i] - T[i - 1]);
  report.add(CheckEntry{"T-strictly-increasing", min_dT > 0.0, min_dT, 0.0, n - 1,
                        "min adjacent temperature increment on the grid"});

  // Probe T on offsets shrinking geometrically below the first grid point:
  // it must keep decreasing toward the ground energy and stay positive. A
  // vanishing limit can only be checked down to the resolution probed here.
  {
    const double off0 = E_grid.front() - eg;
    bool decays = t_ok;
    double prev = T.front();
    double last = T.front();
    int probes = 0;
    for (int k = 1; k <= 9; ++k) {
      const double off = off0 * std::pow(10.0, -k);
      if (eg + off == eg) break;
      double t;
      try {
        t = numerics::temperature_from_relation(fr, eg + off, beta, cfg);
      } catch (const Error&) {
        decays = false;
        break;
      }
      if (!(t > 0.0 && t < prev)) decays = false;
      prev = t;
      last = t;
      ++probes;
    }
    if (!(last < T.front())) decays = false;
    report.add(CheckEntry{"T-vanishes-toward-ground", decays, last, 0.0, probes,
                          "temperature at the smallest probed offset above ground"});
  }

  if (fr.has_closed_temperature()) {
    FundamentalRelation stripped = fr;
    stripped.t_closed_form = nullptr;
    double worst = 0.0;
    for (std::size_t i = 0; i < E_grid.size(); ++i) {
      const double closed = fr.t_closed_form(E_grid[i], beta);
      const double numeric =
          numerics::temperature_from_relation(stripped, E_grid[i], beta, cfg);
      worst = std::max(worst, std::abs(closed - numeric) / std::abs(closed));
    }
    report.add(CheckEntry{"T-closed-form-consistent", worst <= 1e-8, worst, 1e-8, n,
                          "max relative gap between closed-form and derivative route"});
  }

  report.normalize();
  return report;
}

void validate_state(const Catalog& cat, const ThermoState& state) {
  if (is_stable(state)) {
    const auto& s = std::get<StableEqState>(state);
    (void)cat.stable(s.model_id, s.E, s.beta);
  } else {
    const auto& s = std::get<NonEqState>(state);
    (void)cat.noneq(s.model_id, s.E, s.beta, s.S_assigned);
  }
}

}  // namespace axiotherm
