#pragma once

#include <functional>
#include <vector>

#include "axiotherm/types.hpp"

namespace axiotherm::numerics {

/// Shared knobs for every numerical kernel. One instance travels through a
/// whole computation so results are reproducible from (inputs, config) alone.
struct NumericsConfig {
  double quad_rel_tol = 1e-10;     ///< relative target for quadrature error
  double quad_abs_tol = 1e-12;     ///< absolute floor for quadrature error
  double root_tol = 1e-12;         ///< bracket width target, relative on energy
  double deriv_initial_step = 1e-3;  ///< first finite-difference step, relative
  double deriv_step_floor = 1e-9;  ///< absolute lower bound on the first step
  int max_refinements = 30;        ///< quadrature subdivision depth budget
  int richardson_levels = 4;       ///< extrapolation table depth, >= 2
  double entropy_abs_tol = 1e-10;  ///< absolute tolerance on entropy residuals

  /// Throws std::invalid_argument when any knob is outside its admissible range.
  void validate() const;
};

/// Root of a monotone scalar function, with solver diagnostics.
struct RootResult {
  double root = 0.0;
  double residual = 0.0;  ///< f(root) - target at the returned point
  int iterations = 0;
};

/// Derivative with error estimate. one_sided is set when the symmetric
/// stencil would have left the admissible domain and a forward/backward
/// stencil was used instead.
struct DerivativeResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool one_sided = false;
};

/// Domain and scaling hints for differentiate(). scale <= 0 means "use |x|".
/// Callers differentiating along an energy axis should pass
/// scale = E - e_ground so steps stay meaningful for relations whose ground
/// energy is far from the working energies.
struct DerivOptions {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double scale = 0.0;
};

/// Signed integral of dE / T(E) between two energies of one relation, the
/// entropy change read off a reversible energy sweep. Uses a 15-point
/// Gauss-Kronrod rule with the embedded 7-point estimate and deterministic
/// midpoint bisection; panels are accepted when their error estimate fits a
/// proportional share of the global budget.
///
/// Throws NonIntegrableEndpointError when an endpoint sits within 1e-6
/// (relative to the endpoint scale) of e_ground, DomainError when an endpoint
/// is below ground, InvariantViolationError when T <= 0 is sampled, and
/// ConvergenceError when the subdivision budget runs out.
[[nodiscard]] EntropyDelta integrate_inverse_T(const FundamentalRelation& fr,
                                               const ModelParams& beta, double E1,
                                               double E2,
                                               const NumericsConfig& cfg = {});

/// Finds E with f(E) = target for strictly monotone f on [lo, hi] using a
/// deterministic bisection-secant hybrid. Stops when the bracket width drops
/// below root_tol relative to the energy scale and, when f_abs_tol > 0, the
/// residual |f(E) - target| is within f_abs_tol as well (or the bracket has
/// collapsed to adjacent doubles, the representable optimum).
///
/// Throws BracketError when [lo, hi] does not straddle the target and
/// InvariantViolationError when sampled values contradict monotonicity.
[[nodiscard]] RootResult solve_monotone(const std::function<double(double)>& f,
                                        double target, double lo, double hi,
                                        const NumericsConfig& cfg = {},
                                        double f_abs_tol = 0.0);

/// d f / d x by central differences with Richardson extrapolation
/// (richardson_levels rows). Falls back to a one-sided stencil when the
/// symmetric neighborhood leaves (opts.lo, opts.hi); the fallback is flagged
/// in the result.
[[nodiscard]] DerivativeResult differentiate(const std::function<double(double)>& f,
                                             double x, const NumericsConfig& cfg = {},
                                             const DerivOptions& opts = {});

/// Temperature of a relation at (E, beta): the closed form when the family
/// declares one, otherwise 1 / (numerical dS/dE). Throws
/// InvariantViolationError when the slope is not positive.
[[nodiscard]] double temperature_from_relation(const FundamentalRelation& fr, double E,
                                               const ModelParams& beta,
                                               const NumericsConfig& cfg = {});

/// Energies e_ground + offset with offsets spaced geometrically in
/// [off_lo, off_hi]. n >= 2; offsets must be positive and increasing.
[[nodiscard]] std::vector<double> log_offset_grid(double e_ground, double off_lo,
                                                  double off_hi, int n);

/// Endpoints closer to e_ground than this fraction of the endpoint scale are
/// rejected by integrate_inverse_T.
inline constexpr double kGroundRejectRel = 1e-6;

/// Temperatures at or below this value count as vanishing for meter
/// feasibility checks (reduced units).
inline constexpr double kTemperatureFloor = 1e-12;

}  // namespace axiotherm::numerics
