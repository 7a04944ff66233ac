#include "axiotherm/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace axiotherm::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; the odd-index nodes (plus the center) carry the
// embedded Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr std::array<double, 4> kWg = {0.1294849661688697, 0.2797053914892767,
                                       0.3818300505051189, 0.4179591836734694};

struct PanelEval {
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_kronrod = 0.0;  // Kronrod rule applied to |f|, roundoff scale
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  PanelEval r;
  r.kronrod = kWgk[7] * fc;
  r.abs_kronrod = kWgk[7] * std::abs(fc);
  r.gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[static_cast<std::size_t>(i)];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    r.kronrod += kWgk[static_cast<std::size_t>(i)] * (f1 + f2);
    r.abs_kronrod += kWgk[static_cast<std::size_t>(i)] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) r.gauss += kWg[static_cast<std::size_t>(i / 2)] * (f1 + f2);
  }
  r.kronrod *= h;
  r.gauss *= h;
  r.abs_kronrod *= std::abs(h);
  return r;
}

struct QuadAccum {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
  int panels = 0;
};

// Depth-first midpoint bisection with a per-panel budget that halves at each
// split; the leaf budgets of a binary tree sum back to the root budget, so the
// accumulated estimate respects the global target by construction.
void refine(const std::function<double(double)>& f, double a, double b, double tol,
            int depth, int max_depth, QuadAccum& acc) {
  const PanelEval p = gk15(f, a, b);
  const double err = std::abs(p.kronrod - p.gauss);
  const double roundoff = 100.0 * kEps * p.abs_kronrod;
  const bool width_exhausted = (b - a) <= 8.0 * kEps * std::max(std::abs(a), std::abs(b));
  if (err <= std::max(tol, roundoff) || depth >= max_depth || width_exhausted) {
    acc.value += p.kronrod;
    acc.error += err;
    acc.abs_value += p.abs_kronrod;
    acc.panels += 1;
    return;
  }
  const double m = 0.5 * (a + b);
  refine(f, a, m, 0.5 * tol, depth + 1, max_depth, acc);
  refine(f, m, b, 0.5 * tol, depth + 1, max_depth, acc);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void NumericsConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string("NumericsConfig.") + name +
                                  " must be positive and finite");
  };
  positive(quad_rel_tol, "quad_rel_tol");
  positive(quad_abs_tol, "quad_abs_tol");
  positive(root_tol, "root_tol");
  positive(deriv_initial_step, "deriv_initial_step");
  positive(deriv_step_floor, "deriv_step_floor");
  positive(entropy_abs_tol, "entropy_abs_tol");
  if (quad_rel_tol >= 1.0 || root_tol >= 1.0 || deriv_initial_step >= 1.0)
    throw std::invalid_argument("NumericsConfig relative tolerances must be < 1");
  if (max_refinements < 1 || max_refinements > 60)
    throw std::invalid_argument("NumericsConfig.max_refinements must be in [1, 60]");
  if (richardson_levels < 2 || richardson_levels > 12)
    throw std::invalid_argument("NumericsConfig.richardson_levels must be in [2, 12]");
}

EntropyDelta integrate_inverse_T(const FundamentalRelation& fr, const ModelParams& beta,
                                 double E1, double E2, const NumericsConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(E1) || !std::isfinite(E2))
    throw std::invalid_argument("integration endpoints must be finite");
  if (E1 == E2) return EntropyDelta{0.0, 0.0, 0};

  const double eg = fr.e_ground(beta);
  const double scale = std::max({std::abs(eg), std::abs(E1), std::abs(E2)});
  const double margin = kGroundRejectRel * scale;
  for (double e : {E1, E2}) {
    if (e < eg)
      throw DomainError("integration endpoint " + fmt(e) + " lies below e_ground " +
                        fmt(eg) + " for model '" + fr.model_id + "'");
    if (e - eg <= margin)
      throw NonIntegrableEndpointError(
          "integration endpoint " + fmt(e) + " is within " + fmt(margin) +
          " of e_ground " + fmt(eg) + " where 1/T diverges (model '" + fr.model_id +
          "')");
  }

  const double lo = std::min(E1, E2);
  const double hi = std::max(E1, E2);
  const double sign = E2 > E1 ? 1.0 : -1.0;

  auto inv_T = [&](double e) {
    const double t = temperature_from_relation(fr, e, beta, cfg);
    return 1.0 / t;
  };
  // Positivity pre-check by sampling; temperature_from_relation re-checks at
  // every node, so this exists to fail fast with the interval in hand.
  for (int i = 0; i <= 8; ++i) {
    const double e = lo + (hi - lo) * i / 8.0;
    (void)inv_T(e);
  }

  const PanelEval first = gk15(inv_T, lo, hi);
  const double target =
      std::max(cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(first.kronrod));

  QuadAccum acc;
  refine(inv_T, lo, hi, target, 0, cfg.max_refinements, acc);

  const double final_target =
      std::max({cfg.quad_abs_tol, cfg.quad_rel_tol * std::abs(acc.value),
                200.0 * kEps * acc.abs_value});
  if (acc.error > final_target)
    throw ConvergenceError("quadrature error estimate " + fmt(acc.error) +
                           " exceeds target " + fmt(final_target) + " after depth-" +
                           std::to_string(cfg.max_refinements) + " refinement on [" +
                           fmt(lo) + ", " + fmt(hi) + "]");

  return EntropyDelta{sign * acc.value, acc.error, acc.panels};
}

RootResult solve_monotone(const std::function<double(double)>& f, double target,
                          double lo, double hi, const NumericsConfig& cfg,
                          double f_abs_tol) {
  cfg.validate();
  if (!(lo < hi)) std::swap(lo, hi);
  if (!(lo < hi)) throw std::invalid_argument("solve_monotone requires lo < hi");

  auto g = [&](double x) { return f(x) - target; };
  double glo = g(lo);
  double ghi = g(hi);
  if (!std::isfinite(glo) || !std::isfinite(ghi))
    throw std::invalid_argument("solve_monotone requires finite f at the bracket ends");
  if (glo == 0.0) return RootResult{lo, 0.0, 0};
  if (ghi == 0.0) return RootResult{hi, 0.0, 0};
  if ((glo > 0.0) == (ghi > 0.0))
    throw BracketError("bracket [" + fmt(lo) + ", " + fmt(hi) +
                       "] does not straddle the target (f-target: " + fmt(glo) + ", " +
                       fmt(ghi) + ")");

  const bool increasing = ghi > glo;
  const double wtol = cfg.root_tol * std::max({std::abs(lo), std::abs(hi), hi - lo});

  double best_x = std::abs(glo) < std::abs(ghi) ? lo : hi;
  double best_g = std::abs(glo) < std::abs(ghi) ? glo : ghi;
  int iters = 0;
  constexpr int kMaxIters = 200;

  while (iters < kMaxIters) {
    const double width = hi - lo;
    const bool collapsed = std::nextafter(lo, hi) >= hi;
    const bool width_ok = width <= wtol || collapsed;
    const bool res_ok = f_abs_tol <= 0.0 || std::abs(best_g) <= f_abs_tol;
    if (width_ok && (res_ok || collapsed)) break;
    ++iters;

    // Secant candidate clamped away from the ends keeps worst-case bisection speed.
    double x;
    const double denom = ghi - glo;
    if (denom != 0.0) {
      x = hi - ghi * width / denom;
      const double guard = 0.125 * width;
      if (!(x > lo + guard && x < hi - guard)) x = 0.5 * (lo + hi);
    } else {
      x = 0.5 * (lo + hi);
    }

    const double gx = g(x);
    if (!std::isfinite(gx))
      throw InvariantViolationError("solve_monotone sampled a non-finite value at " +
                                    fmt(x));

    // A strictly monotone f keeps every interior sample between the bracket
    // values; a decisive breach means the model is not monotone.
    const double slack =
        16.0 * kEps * (std::abs(glo) + std::abs(ghi) + std::abs(gx)) + 1e-300;
    const double lo_val = increasing ? glo : ghi;
    const double hi_val = increasing ? ghi : glo;
    if ((gx < lo_val - slack || gx > hi_val + slack) && width > 8.0 * wtol)
      throw InvariantViolationError(
          "function is not monotone on the bracket: f(" + fmt(x) + ")-target = " +
          fmt(gx) + " outside [" + fmt(lo_val) + ", " + fmt(hi_val) + "]");

    if (std::abs(gx) < std::abs(best_g)) {
      best_g = gx;
      best_x = x;
    }
    if (gx == 0.0) break;

    if ((gx > 0.0) == increasing) {
      hi = x;
      ghi = gx;
    } else {
      lo = x;
      glo = gx;
    }
  }

  if (iters >= kMaxIters)
    throw ConvergenceError("solve_monotone exhausted " + std::to_string(kMaxIters) +
                           " iterations; best residual " + fmt(best_g));
  return RootResult{best_x, best_g, iters};
}

DerivativeResult differentiate(const std::function<double(double)>& f, double x,
                               const NumericsConfig& cfg, const DerivOptions& opts) {
  cfg.validate();
  if (!std::isfinite(x)) throw std::invalid_argument("differentiate requires finite x");

  const double scale = opts.scale > 0.0 ? opts.scale : std::abs(x);
  double h0 = std::max(cfg.deriv_initial_step * scale, cfg.deriv_step_floor);

  const double room_lo = x - opts.lo;
  const double room_hi = opts.hi - x;
  const double sym_room = std::min(room_lo, room_hi);

  bool one_sided = false;
  double direction = 1.0;
  if (sym_room > 2.0 * cfg.deriv_step_floor) {
    h0 = std::min(h0, 0.45 * sym_room);
  } else {
    one_sided = true;
    direction = room_hi >= room_lo ? 1.0 : -1.0;
    const double room = std::max(room_lo, room_hi);
    if (!(room > 2.0 * cfg.deriv_step_floor))
      throw std::invalid_argument("differentiate: no admissible neighborhood around " +
                                  fmt(x));
    h0 = std::min(h0, 0.45 * room);
  }

  const int levels = cfg.richardson_levels;
  std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));

  const double fx = one_sided ? f(x) : 0.0;
  for (int k = 0; k < levels; ++k) {
    const double h = h0 / std::pow(2.0, k);
    double d0;
    if (one_sided) {
      d0 = (f(x + direction * h) - fx) / (direction * h);
    } else {
      d0 = (f(x + h) - f(x - h)) / (2.0 * h);
    }
    auto& row = table[static_cast<std::size_t>(k)];
    row.resize(static_cast<std::size_t>(k) + 1);
    row[0] = d0;
    for (int j = 1; j <= k; ++j) {
      // Central differences gain two orders per level, one-sided stencils one.
      const double factor = one_sided ? std::pow(2.0, j) : std::pow(4.0, j);
      const auto uj = static_cast<std::size_t>(j);
      row[uj] = row[uj - 1] +
                (row[uj - 1] - table[static_cast<std::size_t>(k - 1)][uj - 1]) /
                    (factor - 1.0);
    }
  }

  // The deepest diagonal entry is not always the best once roundoff takes
  // over; pick the diagonal entry with the smallest successive change.
  double best = table[1][1];
  double best_err = std::abs(table[1][1] - table[0][0]);
  for (int k = 2; k < levels; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const double err = std::abs(table[uk][uk] - table[uk - 1][uk - 1]);
    if (err <= best_err) {
      best = table[uk][uk];
      best_err = err;
    }
  }
  best_err = std::max(best_err, 4.0 * kEps * std::abs(best));
  return DerivativeResult{best, best_err, one_sided};
}

double temperature_from_relation(const FundamentalRelation& fr, double E,
                                 const ModelParams& beta, const NumericsConfig& cfg) {
  if (fr.has_closed_temperature()) {
    const double t = fr.t_closed_form(E, beta);
    if (!(t > 0.0) || !std::isfinite(t))
      throw InvariantViolationError("model '" + fr.model_id +
                                    "' reports non-positive temperature " + fmt(t) +
                                    " at E = " + fmt(E));
    return t;
  }
  const double eg = fr.e_ground(beta);
  DerivOptions opts;
  opts.lo = eg;
  opts.scale = E - eg;
  const DerivativeResult d =
      differentiate([&](double e) { return fr.s_se(e, beta); }, E, cfg, opts);
  if (!(d.value > 0.0) || !std::isfinite(d.value))
    throw InvariantViolationError("model '" + fr.model_id +
                                  "' has non-increasing entropy (dS/dE = " +
                                  fmt(d.value) + ") at E = " + fmt(E));
  return 1.0 / d.value;
}

std::vector<double> log_offset_grid(double e_ground, double off_lo, double off_hi,
                                    int n) {
  if (n < 2) throw std::invalid_argument("log_offset_grid requires n >= 2");
  if (!(off_lo > 0.0) || !(off_hi > off_lo))
    throw std::invalid_argument("log_offset_grid requires 0 < off_lo < off_hi");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  const double ratio = off_hi / off_lo;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    grid.push_back(e_ground + off_lo * std::pow(ratio, t));
  }
  return grid;
}

}  // namespace axiotherm::numerics
