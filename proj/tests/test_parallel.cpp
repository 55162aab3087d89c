#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "hemopap/pap_function.hpp"
#include "hemopap/parallel.hpp"
#include "hemopap/picard.hpp"
#include "hemopap/scenario.hpp"

using namespace hemopap;

namespace {

struct EnvGuard {
  explicit EnvGuard(const char* v) {
    if (v)
      setenv("HEMOPAP_THREADS", v, 1);
    else
      unsetenv("HEMOPAP_THREADS");
  }
  ~EnvGuard() { unsetenv("HEMOPAP_THREADS"); }
};

double term(std::int64_t i) {
  double x = static_cast<double>(i % 1000) * 1e-3;
  return std::sin(x) + 1e-7 * static_cast<double>(i);
}

}  // namespace

TEST_CASE("thread cap parsing") {
  {
    EnvGuard g("3");
    CHECK(par::thread_limit() == 3);
  }
  {
    EnvGuard g("0");
    CHECK(par::thread_limit() == 0);
  }
  {
    EnvGuard g(nullptr);
    CHECK(par::thread_limit() == 0);
  }
  {
    EnvGuard g("ract");  // unparsable: automatic
    CHECK(par::thread_limit() == 0);
  }
  {
    EnvGuard g("-2");
    CHECK(par::thread_limit() == 0);
  }
  {
    EnvGuard g("1");
    CHECK_FALSE(par::enabled());
  }
}

TEST_CASE("chunked reduction is bit-identical to straight accumulation") {
  for (std::int64_t n : {std::int64_t{0}, std::int64_t{1}, std::int64_t{8191},
                         std::int64_t{8192}, std::int64_t{8193},
                         std::int64_t{250000}}) {
    // straight chunked evaluation, no threads
    double serial = par::chunked_sum(n, term, false);
    double parallel = par::chunked_sum(n, term, true);
    CHECK(serial == parallel);

    par::MinMax ms = par::chunked_minmax(n, term, false);
    par::MinMax mp = par::chunked_minmax(n, term, true);
    if (n > 0) {
      CHECK(ms.mn == mp.mn);
      CHECK(ms.mx == mp.mx);
    }
  }
}

TEST_CASE("averaging kernels: serial reference equals parallel result") {
  Scenario sc = builtin_example6();
  const PapFunction& a = sc.model.a;
  auto af = [&](double t) { return a.eval(t); };

  double ref = detail::ergodic_mean_serial(af, 500.0, 1e-3);
  {
    EnvGuard g("4");
    CHECK(ergodic_mean(a, 500.0, 1e-3) == ref);
  }
  {
    EnvGuard g("1");
    CHECK(ergodic_mean(a, 500.0, 1e-3) == ref);
  }

  auto refx = detail::sampled_extrema_serial(a, 0.0, 500.0, 1e-3);
  {
    EnvGuard g("4");
    auto px = sampled_extrema(a, 0.0, 500.0, 1e-3);
    CHECK(px.first == refx.first);
    CHECK(px.second == refx.second);
  }
}

TEST_CASE("fixed-point sweeps: thread count cannot change the window") {
  Scenario sc = builtin_example6();
  PicardOptions opt;
  opt.grid_step = 0.05;
  opt.T_trunc = 60.0;
  PapSolution one, many;
  {
    EnvGuard g("1");
    one = picard_solve(sc.model, sc.range, 0.0, 20.0, opt, sc.overrides);
  }
  {
    EnvGuard g("3");
    many = picard_solve(sc.model, sc.range, 0.0, 20.0, opt, sc.overrides);
  }
  REQUIRE(one.converged);
  REQUIRE(many.converged);
  CHECK(one.window.values == many.window.values);
  CHECK(one.iterations == many.iterations);
  CHECK(one.residual_fixed_point == many.residual_fixed_point);
}
