// Timing comparison of the parallel kernels against their serial reference
// implementations. The chunked reductions are designed to give bit-identical
// results for any thread count; this binary checks that while timing.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "hemopap/pap_function.hpp"
#include "hemopap/parallel.hpp"
#include "hemopap/picard.hpp"
#include "hemopap/scenario.hpp"

using namespace hemopap;

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-24s %10.1f ms %10.1f ms   %5.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms,
              identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  Scenario sc = builtin_example6();
  const PapFunction& a = sc.model.a;
  std::function<double(double)> af = [&](double t) { return a.eval(t); };

  std::printf("threads available: %d\n", par::effective_threads());
  std::printf("%-24s %13s %13s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    const double T = 2e4, qs = 2e-3;
    double t0 = now_ms();
    double s = detail::ergodic_mean_serial(af, T, qs);
    double t1 = now_ms();
    double p = ergodic_mean(a, T, qs);
    double t2 = now_ms();
    report("ergodic_mean", t1 - t0, t2 - t1, s == p);
  }

  {
    const double lo = 0.0, hi = 2e4, step = 1e-3;
    double t0 = now_ms();
    auto s = detail::sampled_extrema_serial(a, lo, hi, step);
    double t1 = now_ms();
    auto p = sampled_extrema(a, lo, hi, step);
    double t2 = now_ms();
    report("sampled_extrema", t1 - t0, t2 - t1,
           s.first == p.first && s.second == p.second);
  }

  {
    PicardOptions opt;
    opt.grid_step = 0.01;
    opt.T_trunc = sc.numerics.T_trunc;
    setenv("HEMOPAP_THREADS", "1", 1);
    double t0 = now_ms();
    PapSolution s =
        picard_solve(sc.model, sc.range, 0.0, 200.0, opt, sc.overrides);
    double t1 = now_ms();
    setenv("HEMOPAP_THREADS", "0", 1);
    PapSolution p =
        picard_solve(sc.model, sc.range, 0.0, 200.0, opt, sc.overrides);
    double t2 = now_ms();
    report("picard_solve", t1 - t0, t2 - t1,
           s.window.values == p.window.values);
  }

  return 0;
}
