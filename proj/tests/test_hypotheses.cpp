#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hemopap/errors.hpp"
#include "hemopap/hypotheses.hpp"
#include "hemopap/scenario.hpp"

using namespace hemopap;

namespace {

ModelSpec constant_spec(double a, double b, double tau, double m, double n) {
  ModelSpec spec;
  spec.m = m;
  spec.n = n;
  spec.a = PapFunction(ApExpr::constant(a));
  if (b > 0.0) {
    spec.b.push_back(PapFunction(ApExpr::constant(b)));
    spec.tau.push_back(PapFunction(ApExpr::constant(tau)));
  }
  return spec;
}

}  // namespace

TEST_CASE("bundled scenario: condition values and derived constants") {
  Scenario sc = builtin_example6();
  HypothesisReport rep = check_all(sc.model, sc.range, sc.overrides);

  CHECK(rep.h1_pass);
  CHECK(rep.h2_value == doctest::Approx(-0.0402).epsilon(1e-9));
  CHECK(rep.h3_value == doctest::Approx(0.015).epsilon(1e-9));
  CHECK(rep.h4_value == doctest::Approx(-0.051528).epsilon(1e-9));
  CHECK(rep.h2_pass);
  CHECK(rep.h3_pass);
  CHECK(rep.h4_pass);
  CHECK(rep.all_pass);
  CHECK_FALSE(rep.extinction_pass);

  const DerivedConstants& c = rep.constants;
  CHECK(c.a_minus == doctest::Approx(0.38).epsilon(1e-9));
  CHECK(c.a_plus == doctest::Approx(0.39).epsilon(1e-9));
  CHECK(c.sum_b_minus == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.sum_b_plus == doctest::Approx(1.21).epsilon(1e-9));
  CHECK(c.r == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(c.H_plus_recomputed == doctest::Approx(0.008).epsilon(1e-9));
  CHECK(c.H_minus_recomputed == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(c.L_recomputed == doctest::Approx(0.0024).epsilon(1e-9));
  // overrides take effect; recomputed values are reported alongside
  CHECK(c.H_plus == 0.005);
  CHECK(c.H_minus == 0.0);
  CHECK(c.L == 0.01);
  CHECK(c.C == doctest::Approx(0.2632).epsilon(1e-12));
}

TEST_CASE("recomputed constants are used when no overrides are given") {
  Scenario sc = builtin_example6();
  HypothesisReport rep = check_all(sc.model, sc.range);  // no overrides
  CHECK(rep.constants.H_plus == rep.constants.H_plus_recomputed);
  CHECK(rep.constants.L == sc.model.lipschitz);  // spec value, not recomputed
  // H3 shifts by the difference between override and recomputed bound
  CHECK(rep.h3_value == doctest::Approx(0.012).epsilon(1e-9));
}

TEST_CASE("h4 equals the stability rate function at zero, bitwise") {
  Scenario sc = builtin_example6();
  HypothesisReport rep = check_all(sc.model, sc.range, sc.overrides);
  RateFnParams p = rate_params(sc.model, sc.range, sc.overrides);
  CHECK(rep.h4_value == eval_rate_function(RateKind::StabilityDelta, p, 0.0));
}

TEST_CASE("rate functions are increasing and certified rates are negative") {
  Scenario sc = builtin_example6();
  RateFnParams p = rate_params(sc.model, sc.range, sc.overrides);
  for (RateKind kind : {RateKind::ExtinctionG, RateKind::ContractionGamma,
                        RateKind::StabilityDelta}) {
    double prev = eval_rate_function(kind, p, 0.0);
    for (double u = 0.05; u <= 1.0; u += 0.05) {
      double cur = eval_rate_function(kind, p, u);
      CHECK(cur > prev);
      prev = cur;
    }
  }

  RateCertificate zeta =
      rate_bisect(RateKind::ContractionGamma, sc.model, sc.range,
                  sc.overrides);
  CHECK(zeta.rate == doctest::Approx(0.1457186543).epsilon(1e-6));
  CHECK(eval_rate_function(RateKind::ContractionGamma, p, zeta.rate) < 0.0);
  CHECK(eval_rate_function(RateKind::ContractionGamma, p, zeta.rate + 1e-5) >
        0.0);
  // e^{-zeta} is the certified sup-norm contraction factor
  CHECK(std::exp(-zeta.rate) == doctest::Approx(0.86440).epsilon(1e-4));

  RateCertificate lam = rate_bisect(RateKind::StabilityDelta, sc.model,
                                    sc.range, sc.overrides);
  CHECK(lam.rate == doctest::Approx(0.0217165).epsilon(1e-4));
  CHECK(eval_rate_function(RateKind::StabilityDelta, p, lam.rate) < 0.0);
  CHECK(lam.value_at_zero ==
        check_all(sc.model, sc.range, sc.overrides).h4_value);
}

TEST_CASE("extinction rate for the decay-dominated constant model") {
  ModelSpec spec = constant_spec(1.0, 0.5, 1.0, 2.0, 2.0);
  CHECK(extinction_condition(spec));
  RateCertificate g =
      rate_bisect(RateKind::ExtinctionG, spec, RangeParams{0.5, 2.0, {}});
  CHECK(g.rate == doctest::Approx(0.314922).epsilon(1e-4));
  RateFnParams p = rate_params(spec, RangeParams{0.5, 2.0, {}});
  CHECK(eval_rate_function(RateKind::ExtinctionG, p, g.rate) < 0.0);
  CHECK(g.value_at_zero == doctest::Approx(-0.5).epsilon(1e-12));

  CHECK_FALSE(extinction_condition(builtin_example6().model));
}

TEST_CASE("rate bisection refuses when the function is nonnegative at zero") {
  ModelSpec spec = constant_spec(0.38, 1.1, 1.0, 2.0, 2.0);
  Overrides heavy;
  heavy.L = 0.5;  // forces Delta(0) = -0.38 + (0.5 + sum_b_plus C) > 0
  CHECK_THROWS_AS(rate_bisect(RateKind::StabilityDelta, spec,
                              RangeParams{2.0, 2.9, {}}, heavy),
                  ConditionError);
}

TEST_CASE("unequal exponents: companion point gates the box") {
  ModelSpec spec = constant_spec(1.0, 1.0, 1.0, 2.0, 4.0);
  // flux peaks at 1; k = 0.5 has companion point 2
  HypothesisReport ok = check_all(spec, RangeParams{0.5, 1.8, {}});
  CHECK(ok.h1_pass);
  REQUIRE(ok.h1_argmax.has_value());
  CHECK(*ok.h1_argmax == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(ok.h1_k_tilde.has_value());
  CHECK(*ok.h1_k_tilde == doctest::Approx(2.0).epsilon(1e-9));

  HypothesisReport wide = check_all(spec, RangeParams{0.5, 2.2, {}});
  CHECK_FALSE(wide.h1_pass);  // M beyond the companion point
  CHECK_FALSE(wide.all_pass);

  HypothesisReport shifted = check_all(spec, RangeParams{1.2, 1.8, {}});
  CHECK_FALSE(shifted.h1_pass);  // k beyond the flux peak
}

TEST_CASE("equal exponents: only box ordering is required for the shape") {
  ModelSpec spec = constant_spec(0.38, 1.1, 1.0, 2.0, 2.0);
  HypothesisReport rep = check_all(spec, RangeParams{2.0, 2.9, {}});
  CHECK(rep.h1_pass);
  CHECK_FALSE(rep.h1_argmax.has_value());
  CHECK(rep.h2_value == doctest::Approx(-0.002).epsilon(1e-12));
  CHECK(rep.h3_value == doctest::Approx(0.12).epsilon(1e-12));
  CHECK(rep.h4_value == doctest::Approx(-0.38 + 1.1 * 0.232).epsilon(1e-9));
  CHECK(rep.all_pass);
}
