#include "hemopap/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hemopap/errors.hpp"
#include "hemopap/scenario.hpp"

namespace hemopap {

namespace {

double history_sup_gap(const HistoryFn& a, const HistoryFn& b, double t0,
                       double r) {
  double gap = std::fabs(a(t0) - b(t0));
  if (r > 0.0) {
    const int samples = 400;
    for (int i = 0; i <= samples; ++i) {
      double t = t0 - r + r * static_cast<double>(i) / samples;
      gap = std::max(gap, std::fabs(a(t) - b(t)));
    }
  }
  return gap;
}

double history_sup(const HistoryFn& f, double t0, double r) {
  double s = f(t0);
  if (r > 0.0) {
    const int samples = 400;
    for (int i = 0; i <= samples; ++i) {
      double t = t0 - r + r * static_cast<double>(i) / samples;
      s = std::max(s, f(t));
    }
  }
  return s;
}

}  // namespace

AttractorResult attractor_experiment(const ModelSpec& spec,
                                     const RangeParams& range,
                                     const HistoryFn& phi_a,
                                     const HistoryFn& phi_b, double horizon,
                                     double h, const Overrides& ovr) {
  AttractorResult res;
  HypothesisReport rep = check_all(spec, range, ovr);
  res.cert.advisory = !rep.all_pass;

  const double t0 = 0.0;
  res.a = integrate(spec, phi_a, t0, horizon, h);
  res.b = integrate(spec, phi_b, t0, horizon, h);
  if (res.a.failed || res.b.failed)
    throw std::runtime_error("attractor_experiment: integration failed: " +
                             (res.a.failed ? res.a.failure : res.b.failure));

  const double r = max_delay(spec);
  res.cert.initial_gap = history_sup_gap(phi_a, phi_b, t0, r);

  if (!res.cert.advisory) {
    RateCertificate rc =
        rate_bisect(RateKind::StabilityDelta, spec, range, ovr);
    res.cert.lambda_bound = rc.rate;
    res.cert.M1 = range.M + res.cert.initial_gap;  // e^{lambda t0} = 1 at t0 = 0
    bool pass = true;
    double excess = 0.0;
    for (std::size_t i = 0; i < res.a.times.size(); ++i) {
      double y = std::fabs(res.a.values[i] - res.b.values[i]);
      double env = res.cert.M1 *
                   std::exp(-res.cert.lambda_bound * (res.a.times[i] - t0));
      if (y > env + 1e-12) {
        pass = false;
        excess = std::max(excess, y - env);
      }
    }
    res.cert.envelope_pass = pass;
    res.cert.max_envelope_excess = excess;
  }

  // Observed decay rate: least squares on log gap above the noise floor.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < res.a.times.size(); ++i) {
    double y = std::fabs(res.a.values[i] - res.b.values[i]);
    if (y <= 1e-10) continue;
    double t = res.a.times[i];
    double ly = std::log(y);
    sx += t;
    sy += ly;
    sxx += t * t;
    sxy += t * ly;
    ++count;
  }
  if (count >= 2) {
    double denom = static_cast<double>(count) * sxx - sx * sx;
    if (denom > 0.0) {
      res.cert.fitted_rate =
          -((static_cast<double>(count) * sxy - sx * sy) / denom);
      res.cert.has_fit = true;
    }
  }
  return res;
}

ExtinctionResult extinction_experiment(const ModelSpec& spec,
                                       const HistoryFn& phi, double horizon,
                                       double h) {
  if (!extinction_condition(spec)) {
    double sum_b_plus = 0.0;
    for (const PapFunction& f : spec.b) sum_b_plus += f.bounds().hi;
    std::ostringstream os;
    os << "extinction condition not satisfied: a_minus = "
       << spec.a.bounds().lo << " <= sum_b_plus = " << sum_b_plus;
    throw ConditionError(os.str());
  }
  ExtinctionResult res;
  RateCertificate rc =
      rate_bisect(RateKind::ExtinctionG, spec, RangeParams{1.0, 2.0, {}});
  res.lambda_g = rc.rate;

  const double t0 = 0.0;
  const double r = max_delay(spec);
  res.traj = integrate(spec, phi, t0, horizon, h);
  if (res.traj.failed)
    throw std::runtime_error("extinction_experiment: integration failed: " +
                             res.traj.failure);
  res.envelope_q = history_sup(phi, t0, r);

  bool pass = true;
  double excess = 0.0;
  for (std::size_t i = 0; i < res.traj.times.size(); ++i) {
    double env =
        res.envelope_q * std::exp(-res.lambda_g * (res.traj.times[i] - t0));
    if (res.traj.values[i] > env + 1e-12) {
      pass = false;
      excess = std::max(excess, res.traj.values[i] - env);
    }
  }
  res.envelope_pass = pass;
  res.max_envelope_excess = excess;
  res.final_value = res.traj.values.back();
  double tail_from = horizon - 0.2 * (horizon - t0);
  res.tail_max = 0.0;
  for (std::size_t i = 0; i < res.traj.times.size(); ++i)
    if (res.traj.times[i] >= tail_from)
      res.tail_max = std::max(res.tail_max, res.traj.values[i]);
  return res;
}

Fig2Result fig2_scenario(double horizon, double h) {
  const Scenario sc = builtin_example6();
  Fig2Result res;
  res.low = integrate(sc.model, HistoryFn::constant(0.1), 0.0, horizon, h);
  res.high = integrate(sc.model, HistoryFn::constant(1.0), 0.0, horizon, h);
  if (res.low.failed || res.high.failed)
    throw std::runtime_error("fig2: integration failed");
  double tail_from = 0.8 * horizon;
  for (std::size_t i = 0; i < res.low.times.size(); ++i)
    if (res.low.times[i] >= tail_from)
      res.final_window_diff =
          std::max(res.final_window_diff,
                   std::fabs(res.low.values[i] - res.high.values[i]));
  return res;
}

std::vector<HistoryFn> history_bank(const RangeParams& range) {
  double mid = 0.5 * (range.k + range.M);
  double amp = 0.3 * (range.M - range.k);
  return {
      HistoryFn::constant(range.k),
      HistoryFn::constant(mid),
      HistoryFn::constant(range.M),
      HistoryFn::expression(ApExpr::sum(
          {ApExpr::constant(mid), ApExpr::scale(amp, ApExpr::cosine(1.0, 0.0))})),
  };
}

}  // namespace hemopap
