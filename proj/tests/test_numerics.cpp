#include <doctest.h>

#include <cmath>

#include "axiotherm/catalog.hpp"
#include "axiotherm/numerics.hpp"
#include "test_support.hpp"

using namespace axiotherm;
using numerics::NumericsConfig;

namespace {

// Closed-form entropy differences written out independently of the catalog
// lambdas; the quadrature must reproduce these.
double ideal_gas_delta_S(double N, double E1, double E2) {
  return 1.5 * N * std::log(E2 / E1);
}

double quasi_delta_S(double T0, double C, double E0, double E1, double E2) {
  return C * (std::log1p((E2 - E0) / (C * T0)) - std::log1p((E1 - E0) / (C * T0)));
}

double power_law_delta_S(double a, double p, double V, double E1, double E2) {
  return a * std::pow(V, 1.0 - p) * (std::pow(E2, p) - std::pow(E1, p));
}

}  // namespace

TEST_CASE("config validation rejects bad knobs") {
  NumericsConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.quad_rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NumericsConfig{};
  cfg.richardson_levels = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NumericsConfig{};
  cfg.max_refinements = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NumericsConfig{};
  cfg.deriv_initial_step = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("inverse-temperature integral matches the ideal-gas closed form") {
  const auto entry = catalog::monoatomic_ideal_gas();
  const auto d = numerics::integrate_inverse_T(entry.relation, entry.default_params,
                                               1.5, 3.0);
  const double expect = ideal_gas_delta_S(1.0, 1.5, 3.0);  // 1.5 ln 2
  CHECK(std::abs(expect - 1.0397207708399179) < 1e-15);
  CHECK(std::abs(d.value - expect) <= 1e-12 * std::abs(expect));
  CHECK(d.abs_error_estimate >= 0.0);
  CHECK(d.abs_error_estimate <= std::max(1e-12, 1e-10 * std::abs(d.value)));
  CHECK(d.quadrature_panels >= 1);

  const auto rev = numerics::integrate_inverse_T(entry.relation, entry.default_params,
                                                 3.0, 1.5);
  CHECK(rev.value == doctest::Approx(-d.value).epsilon(1e-14));
}

TEST_CASE("zero-length interval integrates to exactly zero") {
  const auto entry = catalog::monoatomic_ideal_gas();
  const auto d = numerics::integrate_inverse_T(entry.relation, entry.default_params,
                                               2.0, 2.0);
  CHECK(d.value == 0.0);
  CHECK(d.abs_error_estimate == 0.0);
  CHECK(d.quadrature_panels == 0);
}

TEST_CASE("near-isothermal integral keeps precision via its closed form") {
  const double T0 = 273.16, C = 1e6, E0 = 0.0;
  const auto entry = catalog::quasi_reservoir(T0, C, E0);
  const auto d = numerics::integrate_inverse_T(entry.relation, entry.default_params,
                                               E0, E0 + 1.0);
  const double expect = quasi_delta_S(T0, C, E0, E0, E0 + 1.0);
  CHECK(std::abs(d.value - expect) <= 1e-12 * std::abs(expect));
  // Slope 1/T is nearly constant here, so the value is ~1/273.16.
  CHECK(d.value == doctest::Approx(3.6609e-3).epsilon(1e-4));
}

TEST_CASE("power-law integral matches its closed form") {
  const double a = 1.3, p = 0.6, V = 2.0;
  const auto entry = catalog::power_law_system(a, p, V);
  const auto d = numerics::integrate_inverse_T(entry.relation, entry.default_params,
                                               0.5, 2.0);
  const double expect = power_law_delta_S(a, p, V, 0.5, 2.0);
  CHECK(std::abs(d.value - expect) <= 1e-11 * std::abs(expect));
}

TEST_CASE("endpoints hugging the ground energy are rejected") {
  const auto gas = catalog::monoatomic_ideal_gas();
  CHECK_THROWS_AS((void)numerics::integrate_inverse_T(gas.relation, gas.default_params,
                                                1e-9, 3.0),
                  NonIntegrableEndpointError);
  CHECK_THROWS_AS((void)numerics::integrate_inverse_T(gas.relation, gas.default_params,
                                                -1.0, 3.0),
                  DomainError);

  const auto res = catalog::quasi_reservoir(1.0, 100.0, 0.0);  // ground at -100
  const double eg = res.relation.e_ground(res.default_params);
  CHECK_THROWS_AS((void)numerics::integrate_inverse_T(res.relation, res.default_params,
                                                eg + 1e-9 * std::abs(eg), 0.0),
                  NonIntegrableEndpointError);
}

TEST_CASE("integral is additive across a midpoint split") {
  testsupport::Rng rng(20260819u);
  const auto cat = Catalog::with_builtins();
  for (int i = 0; i < 50; ++i) {
    const auto& family = testsupport::families()[static_cast<std::size_t>(i) % 3];
    const auto beta = testsupport::random_params(rng, family);
    const auto& rel = cat.entry(family).relation;
    const double Ea = testsupport::energy_at_temperature(family, beta,
                                                         rng.log_uniform(0.5, 2.0));
    const double Eb = testsupport::energy_at_temperature(family, beta,
                                                         rng.log_uniform(2.5, 8.0));
    const double Em = 0.5 * (Ea + Eb);
    const auto full = numerics::integrate_inverse_T(rel, beta, Ea, Eb);
    const auto left = numerics::integrate_inverse_T(rel, beta, Ea, Em);
    const auto right = numerics::integrate_inverse_T(rel, beta, Em, Eb);
    const double budget = 2.0 * (full.abs_error_estimate + left.abs_error_estimate +
                                 right.abs_error_estimate) +
                          1e-14 * std::abs(full.value);
    CHECK(std::abs(left.value + right.value - full.value) <= budget);
  }
}

TEST_CASE("integral sign follows the energy direction and zero iff degenerate") {
  const auto cat = Catalog::with_builtins();
  const auto& rel = cat.entry("ideal_gas").relation;
  const ModelParams beta{{"N", 2.0}, {"V", 1.0}};
  CHECK(numerics::integrate_inverse_T(rel, beta, 1.0, 4.0).value > 0.0);
  CHECK(numerics::integrate_inverse_T(rel, beta, 4.0, 1.0).value < 0.0);
  CHECK(numerics::integrate_inverse_T(rel, beta, 4.0, 4.0).value == 0.0);
}

TEST_CASE("monotone solver finds roots and reports diagnostics") {
  NumericsConfig cfg;
  auto cube = [](double x) { return x * x * x; };
  const auto r = numerics::solve_monotone(cube, 8.0, 0.0, 5.0, cfg);
  CHECK(std::abs(r.root - 2.0) <= 1e-11);
  CHECK(r.iterations > 0);
  CHECK(std::abs(r.residual) <= 1e-8);

  auto falling = [](double x) { return -x; };
  const auto rf = numerics::solve_monotone(falling, 1.0, -5.0, 5.0, cfg);
  CHECK(std::abs(rf.root + 1.0) <= 1e-11);

  // Residual tolerance drives the solve past the width criterion when asked.
  const auto tight = numerics::solve_monotone(cube, 8.0, 0.0, 5.0, cfg, 1e-13);
  CHECK(std::abs(tight.root * tight.root * tight.root - 8.0) <= 1e-13);
}

TEST_CASE("solver rejects brackets that do not straddle") {
  auto cube = [](double x) { return x * x * x; };
  CHECK_THROWS_AS((void)numerics::solve_monotone(cube, 8.0, 3.0, 5.0, NumericsConfig{}),
                  BracketError);
}

TEST_CASE("solver flags non-monotone functions it can see") {
  // Peaks at x = 1 with value 1; the bracket straddles the target but the
  // interior sample overshoots both bracket values.
  auto hump = [](double x) { return 1.0 - (x - 1.0) * (x - 1.0); };
  CHECK_THROWS_AS(
      (void)numerics::solve_monotone(hump, 0.5, 0.0, 1.5, NumericsConfig{}),
      InvariantViolationError);
}

TEST_CASE("differentiate is exact on polynomials and accurate on logs") {
  NumericsConfig cfg;
  auto square = [](double x) { return x * x; };
  const auto d1 = numerics::differentiate(square, 3.0, cfg);
  CHECK(std::abs(d1.value - 6.0) <= 1e-10);
  CHECK_FALSE(d1.one_sided);

  auto slog = [](double x) { return 1.5 * std::log(x); };
  const auto d2 = numerics::differentiate(slog, 1.5, cfg);
  CHECK(std::abs(d2.value - 1.0) <= 1e-9);

  auto flat = [](double) { return 4.25; };
  const auto d3 = numerics::differentiate(flat, 10.0, cfg);
  CHECK(std::abs(d3.value) <= 1e-12);
}

TEST_CASE("differentiate falls back one-sided at a domain edge and says so") {
  NumericsConfig cfg;
  auto slog = [](double x) { return std::log(x); };
  numerics::DerivOptions opts;
  opts.lo = 1.0 - 1e-12;  // effectively pinned at the left edge
  opts.scale = 1.0;
  const auto d = numerics::differentiate(slog, 1.0, cfg, opts);
  CHECK(d.one_sided);
  CHECK(std::abs(d.value - 1.0) <= 1e-6);
}

TEST_CASE("temperature from the relation agrees between routes") {
  const auto cat = Catalog::with_builtins();
  testsupport::Rng rng(7u);
  for (const auto& family : testsupport::families()) {
    for (int i = 0; i < 10; ++i) {
      const auto st = testsupport::random_stable(rng, cat, family);
      const auto& rel = cat.entry(family).relation;
      const double closed = numerics::temperature_from_relation(rel, st.E, st.beta);
      FundamentalRelation stripped = rel;
      stripped.t_closed_form = nullptr;
      const double numeric =
          numerics::temperature_from_relation(stripped, st.E, st.beta);
      CHECK(std::abs(closed - numeric) <= 1e-8 * closed);
    }
  }
}

TEST_CASE("log-offset grids are strictly ascending and span the request") {
  const auto g = numerics::log_offset_grid(-5.0, 1e-3, 1e3, 25);
  REQUIRE(g.size() == 25);
  CHECK(g.front() == doctest::Approx(-5.0 + 1e-3));
  CHECK(g.back() == doctest::Approx(-5.0 + 1e3));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK_THROWS_AS((void)numerics::log_offset_grid(0.0, -1.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)numerics::log_offset_grid(0.0, 1.0, 2.0, 1), std::invalid_argument);
}
