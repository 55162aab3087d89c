#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hemopap/errors.hpp"
#include "hemopap/picard.hpp"
#include "hemopap/scenario.hpp"

using namespace hemopap;

namespace {

ModelSpec constant_spec() {
  ModelSpec spec;
  spec.m = 2.0;
  spec.n = 2.0;
  spec.a = PapFunction(ApExpr::constant(0.38));
  spec.b.push_back(PapFunction(ApExpr::constant(1.1)));
  spec.tau.push_back(PapFunction(ApExpr::constant(1.0)));
  return spec;
}

// positive root of 0.38 (1 + x^2) = 1.1 x
double constant_equilibrium() {
  double B = 1.1 / 0.38;
  return 0.5 * (B + std::sqrt(B * B - 4.0));
}

double window_error(const PapSolution& sol, double target) {
  double worst = 0.0;
  for (double v : sol.window.values)
    worst = std::max(worst, std::fabs(v - target));
  return worst;
}

}  // namespace

TEST_CASE("one operator evaluation with constant data has a closed form") {
  ModelSpec spec;
  spec.m = 2.0;
  spec.n = 2.0;
  spec.a = PapFunction(ApExpr::constant(1.0));
  spec.b.push_back(PapFunction(ApExpr::constant(0.5)));
  spec.tau.push_back(PapFunction(ApExpr::constant(1.0)));
  auto psi = [](double) { return 1.0; };
  GammaResult g = gamma_apply(spec, psi, 0.0, 40.0, 2e-5);
  // integrand e^{-(t-s)} * 0.5 * flux(1) with flux(1) = 1/2
  double want = 0.25 * (1.0 - std::exp(-40.0));
  CHECK(g.value == doctest::Approx(want).epsilon(1e-9));
  CHECK(g.tail_bound < 1e-12);
  // shifting t leaves the value unchanged for constant data
  GammaResult g2 = gamma_apply(spec, psi, 17.3, 40.0, 2e-5);
  CHECK(g2.value == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("constant coefficients converge to the equilibrium") {
  PicardOptions opt;
  opt.grid_step = 0.02;
  PapSolution sol =
      picard_solve(constant_spec(), RangeParams{2.0, 2.9, {}}, 0.0, 50.0, opt);
  REQUIRE(sol.converged);
  double xstar = constant_equilibrium();
  CHECK(xstar == doctest::Approx(2.4937313343).epsilon(1e-9));
  CHECK(window_error(sol, xstar) < 1e-4);
  // measured per-sweep ratio against the certified contraction factor
  REQUIRE_FALSE(sol.contraction_ratios.empty());
  double factor = 0.2552 / 0.38;  // (sum_b_plus C + L)/a_minus
  CHECK(sol.contraction_ratios.back() <= factor + 0.05);
  CHECK(sol.residual_fixed_point < 1e-6);

  double diff = crosscheck_forward(constant_spec(), sol, 0.01);
  CHECK(diff < 1e-3);
}

TEST_CASE("quadrature refinement shrinks the equilibrium error quadratically") {
  double xstar = constant_equilibrium();
  PicardOptions coarse, fine;
  coarse.grid_step = 0.04;
  fine.grid_step = 0.02;
  RangeParams box{2.0, 2.9, {}};
  double d1 = window_error(
      picard_solve(constant_spec(), box, 0.0, 20.0, coarse), xstar);
  double d2 = window_error(
      picard_solve(constant_spec(), box, 0.0, 20.0, fine), xstar);
  CHECK(d2 <= 0.35 * d1 + 1e-9);
}

TEST_CASE("bundled scenario: converged window with certified diagnostics") {
  Scenario sc = builtin_example6();
  PicardOptions opt;
  opt.grid_step = sc.numerics.grid_step;
  opt.T_trunc = sc.numerics.T_trunc;
  PapSolution sol = picard_solve(sc.model, sc.range, 0.0, 100.0, opt,
                                 sc.overrides);
  REQUIRE(sol.converged);
  CHECK(sol.iterations <= 30);
  CHECK(sol.tail_bound < 1e-9);
  CHECK(sol.residual_fixed_point < 5e-7);
  // measured ratio within the certified factor e^{-zeta} = 0.8644
  CHECK(sol.contraction_ratios.back() <= 0.8644 + 0.05);

  // the operator maps the box into itself: pre-projection window extrema
  // never leave [k, M], so the safeguard never alters the window
  for (std::size_t i = 0; i < sol.iterate_min.size(); ++i) {
    CHECK(sol.iterate_min[i] >= sc.range.k - 1e-6);
    CHECK(sol.iterate_max[i] <= sc.range.M + 1e-6);
  }

  // independent forward integration stays near the window
  double diff = crosscheck_forward(sc.model, sol, 0.01);
  CHECK(diff < 0.05);  // certified tolerance
  CHECK(diff < 5e-3);  // observed headroom, regression guard
}

TEST_CASE("long window switches to the guarded quadrature path") {
  // cumulative loss integral exceeds the fast-path threshold (~625 > 600)
  PicardOptions opt;
  opt.grid_step = 0.1;
  PapSolution sol = picard_solve(constant_spec(), RangeParams{2.0, 2.9, {}},
                                 0.0, 1600.0, opt);
  REQUIRE(sol.converged);
  CHECK(window_error(sol, constant_equilibrium()) < 5e-3);
}

TEST_CASE("zero-production crosscheck: decaying window reproduced exactly") {
  ModelSpec spec;
  spec.m = 2.0;
  spec.n = 2.0;
  spec.a = PapFunction(ApExpr::constant(1.0));
  PapSolution sol;
  sol.w0 = 0.0;
  sol.w1 = 5.0;
  sol.grid_step = 0.01;
  sol.T_trunc = 1.0;
  sol.window.t0 = 0.0;
  sol.window.step = 0.01;
  for (int i = 0; i <= 500; ++i)
    sol.window.values.push_back(std::exp(-0.01 * static_cast<double>(i)));
  double diff = crosscheck_forward(spec, sol, 0.01);
  CHECK(diff < 1e-6);
}

TEST_CASE("window must align with the quadrature grid") {
  PicardOptions opt;
  opt.grid_step = 0.05;
  CHECK_THROWS_AS(picard_solve(constant_spec(), RangeParams{2.0, 2.9, {}},
                               0.0, 100.03, opt),
                  std::invalid_argument);
}

TEST_CASE("failing conditions abort the solve") {
  ModelSpec spec;
  spec.m = 2.0;
  spec.n = 2.0;
  spec.a = PapFunction(ApExpr::constant(1.0));  // no production at all
  CHECK_THROWS_AS(
      picard_solve(spec, RangeParams{0.5, 2.0, {}}, 0.0, 10.0),
      ConditionError);
}

TEST_CASE("iteration budget exhaustion reports non-convergence") {
  PicardOptions opt;
  opt.grid_step = 0.05;
  opt.max_iter = 1;
  PapSolution sol =
      picard_solve(constant_spec(), RangeParams{2.0, 2.9, {}}, 0.0, 10.0, opt);
  CHECK_FALSE(sol.converged);
  CHECK(sol.iterations == 1);
}
