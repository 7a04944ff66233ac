#include "axiotherm/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace axiotherm::equilibrium {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

PartitionResult equilibrate_pair(const Catalog& cat, const std::string& model_A,
                                 const ModelParams& beta_A, const std::string& model_B,
                                 const ModelParams& beta_B, double E_total,
                                 const numerics::NumericsConfig& cfg) {
  cfg.validate();
  cat.check_params(model_A, beta_A);
  cat.check_params(model_B, beta_B);
  if (!std::isfinite(E_total))
    throw std::invalid_argument("total energy must be finite");

  const auto& rel_A = cat.entry(model_A).relation;
  const auto& rel_B = cat.entry(model_B).relation;
  const double eg_A = rel_A.e_ground(beta_A);
  const double eg_B = rel_B.e_ground(beta_B);

  const double span = E_total - eg_A - eg_B;
  if (!(span > 0.0))
    throw DomainError("total energy " + fmt(E_total) +
                      " leaves no admissible split above the grounds " + fmt(eg_A) +
                      " and " + fmt(eg_B));
  const double margin = 1e-9 * span;
  const double lo = eg_A + margin;
  const double hi = E_total - eg_B - margin;
  if (!(lo < hi))
    throw DomainError("admissible split interval collapsed for E_total = " +
                      fmt(E_total));

  const auto gap = [&](double E_A) {
    return numerics::temperature_from_relation(rel_A, E_A, beta_A, cfg) -
           numerics::temperature_from_relation(rel_B, E_total - E_A, beta_B, cfg);
  };
  const auto root = numerics::solve_monotone(gap, 0.0, lo, hi, cfg);

  PartitionResult res;
  res.A = cat.stable(model_A, root.root, beta_A);
  res.B = cat.stable(model_B, E_total - root.root, beta_B);
  res.T = numerics::temperature_from_relation(rel_A, res.A.E, beta_A, cfg);
  res.S_total = rel_A.s_se(res.A.E, beta_A) + rel_B.s_se(res.B.E, beta_B);
  res.iterations = root.iterations;
  return res;
}

ScanResult max_entropy_scan(const Catalog& cat, const StableEqState& A,
                            const StableEqState& B, double half_width, int n,
                            const numerics::NumericsConfig& cfg) {
  cfg.validate();
  validate_state(cat, ThermoState{A});
  validate_state(cat, ThermoState{B});
  if (n < 5 || n % 2 == 0)
    throw std::invalid_argument("scan size must be odd and >= 5, got " +
                                std::to_string(n));

  const auto& rel_A = cat.entry(A.model_id).relation;
  const auto& rel_B = cat.entry(B.model_id).relation;
  const double room_A = A.E - rel_A.e_ground(A.beta);
  const double room_B = B.E - rel_B.e_ground(B.beta);
  if (half_width <= 0.0) half_width = 0.5 * std::min(room_A, room_B);
  if (!(half_width < room_A) || !(half_width < room_B))
    throw DomainError("scan half-width " + fmt(half_width) +
                      " reaches a ground state (clearances " + fmt(room_A) + ", " +
                      fmt(room_B) + ")");

  ScanResult out;
  out.half_width = half_width;
  out.profile.reserve(static_cast<std::size_t>(n));
  const int half = (n - 1) / 2;
  for (int i = -half; i <= half; ++i) {
    ScanPoint pt;
    pt.epsilon = half_width * static_cast<double>(i) / static_cast<double>(half);
    const double E_A = A.E + pt.epsilon;
    const double E_B = B.E - pt.epsilon;
    pt.S_total = rel_A.s_se(E_A, A.beta) + rel_B.s_se(E_B, B.beta);
    pt.dS_deps = 1.0 / numerics::temperature_from_relation(rel_A, E_A, A.beta, cfg) -
                 1.0 / numerics::temperature_from_relation(rel_B, E_B, B.beta, cfg);
    out.profile.push_back(pt);
  }

  const ScanPoint& center = out.profile[static_cast<std::size_t>(half)];
  const double T_star = numerics::temperature_from_relation(rel_A, A.E, A.beta, cfg);
  const double slope_tol = 1e-8 / T_star;

  CheckEntry peak;
  peak.check_id = "scan-interior-strict-maximum";
  peak.tolerance = 0.0;
  peak.cases_run = n - 1;
  double min_deficit = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (i == half) continue;
    min_deficit = std::min(
        min_deficit, center.S_total - out.profile[static_cast<std::size_t>(i)].S_total);
  }
  peak.residual = min_deficit;
  peak.passed = min_deficit > 0.0;
  peak.detail = "smallest entropy deficit of any off-center sample";
  out.checks.add(peak);

  CheckEntry slopes;
  slopes.check_id = "scan-slope-sign-pattern";
  slopes.tolerance = slope_tol;
  slopes.cases_run = n;
  bool pattern = std::fabs(center.dS_deps) <= slope_tol;
  double worst = std::fabs(center.dS_deps);
  for (int i = 0; i < n; ++i) {
    const ScanPoint& pt = out.profile[static_cast<std::size_t>(i)];
    if (i < half && !(pt.dS_deps > 0.0)) pattern = false;
    if (i > half && !(pt.dS_deps < 0.0)) pattern = false;
  }
  slopes.residual = worst;
  slopes.passed = pattern;
  slopes.detail = "entropy slope at the center; signs checked on both flanks";
  out.checks.add(slopes);

  out.checks.normalize();
  return out;
}

bool mutual_equilibrium_predicate(const Catalog& cat, const StableEqState& a,
                                  const StableEqState& b,
                                  const numerics::NumericsConfig& cfg, double rel_tol) {
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("relative tolerance must be > 0");
  const double T_a = temperature_of(cat, a, cfg);
  const double T_b = temperature_of(cat, b, cfg);
  return std::fabs(T_a - T_b) <= rel_tol * std::max(T_a, T_b);
}

double GibbsForces::pressure() const {
  for (const auto& f : forces)
    if (f.name == "V") return -f.value;
  throw std::invalid_argument("model declares no volume parameter");
}

GibbsForces gibbs_forces(const Catalog& cat, const StableEqState& state,
                         const numerics::NumericsConfig& cfg) {
  cfg.validate();
  validate_state(cat, ThermoState{state});
  const CatalogEntry& ent = cat.entry(state.model_id);

  GibbsForces out;
  out.S = ent.relation.s_se(state.E, state.beta);
  out.T = temperature_of(cat, state, cfg);

  for (const auto& spec : ent.param_specs) {
    const double b0 = state.beta.get(spec.name);
    const auto energy_at = [&](double bj) {
      ModelParams beta = state.beta;
      beta.set(spec.name, bj);
      return invert_fundamental(ent.relation, beta, out.S, cfg);
    };
    numerics::DerivOptions opts;
    opts.lo = spec.lower;
    opts.hi = spec.upper;
    const auto d = numerics::differentiate(energy_at, b0, cfg, opts);

    GeneralizedForce f;
    f.name = spec.name;
    f.value = d.value;
    f.abs_error_estimate = d.abs_error_estimate;
    f.one_sided = d.one_sided;
    out.forces.push_back(std::move(f));
  }
  return out;
}

VerificationReport reservoir_impossibility_audit(const Catalog& cat,
                                                 const std::string& model_id,
                                                 const ModelParams& beta,
                                                 const std::vector<double>& E_grid,
                                                 const numerics::NumericsConfig& cfg) {
  cfg.validate();
  cat.check_params(model_id, beta);
  if (E_grid.size() < 3)
    throw std::invalid_argument("audit grid needs at least 3 energies");
  for (std::size_t i = 1; i < E_grid.size(); ++i)
    if (!(E_grid[i] > E_grid[i - 1]))
      throw std::invalid_argument("audit grid must be strictly ascending");

  const auto& rel = cat.entry(model_id).relation;
  const double eg = rel.e_ground(beta);
  std::vector<double> T;
  T.reserve(E_grid.size());
  for (double E : E_grid) {
    try {
      T.push_back(numerics::temperature_from_relation(rel, E, beta, cfg));
    } catch (const InvariantViolationError&) {
      // An audit must flag a broken relation, not die on it: record the
      // slope-derived temperature as non-positive and keep going.
      numerics::DerivOptions opts;
      opts.lo = eg;
      opts.scale = E - eg;
      const auto d = numerics::differentiate(
          [&](double e) { return rel.s_se(e, beta); }, E, cfg, opts);
      T.push_back(d.value == 0.0 ? 0.0 : 1.0 / d.value);
    }
  }

  VerificationReport rep;
  const int n_cases = static_cast<int>(E_grid.size());

  CheckEntry pos;
  pos.check_id = "audit-T-positive";
  pos.residual = *std::min_element(T.begin(), T.end());
  pos.tolerance = 0.0;
  pos.passed = pos.residual > 0.0;
  pos.cases_run = n_cases;
  pos.detail = "minimum temperature on the grid";
  rep.add(pos);

  double min_step = std::numeric_limits<double>::infinity();
  double min_rel_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < T.size(); ++i) {
    min_step = std::min(min_step, T[i] - T[i - 1]);
    min_rel_gap = std::min(min_rel_gap, std::fabs(T[i] - T[i - 1]) /
                                            std::max(std::fabs(T[i]),
                                                     std::fabs(T[i - 1])));
  }

  CheckEntry inc;
  inc.check_id = "audit-T-strictly-increasing";
  inc.residual = min_step;
  inc.tolerance = 0.0;
  inc.passed = min_step > 0.0;
  inc.cases_run = n_cases - 1;
  inc.detail = "minimum adjacent temperature increment";
  rep.add(inc);

  CheckEntry dup;
  dup.check_id = "audit-no-duplicate-temperatures";
  dup.residual = min_rel_gap;
  dup.tolerance = 1e-12;
  dup.passed = min_rel_gap > dup.tolerance;
  dup.cases_run = n_cases - 1;
  dup.detail = "minimum adjacent relative temperature gap";
  rep.add(dup);

  CheckEntry drift;
  drift.check_id = "audit-temperature-drift";
  const double T_lo = *std::min_element(T.begin(), T.end());
  const double T_hi = *std::max_element(T.begin(), T.end());
  drift.residual = (T_hi - T_lo) / (0.5 * (T_hi + T_lo));
  drift.tolerance = 1e-9;
  drift.passed = drift.residual > drift.tolerance;
  drift.cases_run = n_cases;
  drift.detail = "relative temperature drift across [" + fmt(E_grid.front()) + ", " +
                 fmt(E_grid.back()) + "]";
  rep.add(drift);

  rep.normalize();
  return rep;
}

}  // namespace axiotherm::equilibrium
