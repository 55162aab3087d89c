#include "hemopap/hypotheses.hpp"

#include <cmath>
#include <sstream>

#include "hemopap/errors.hpp"

namespace hemopap {

namespace {

DerivedConstants derive_constants(const ModelSpec& spec,
                                  const RangeParams& range,
                                  const Overrides& ovr) {
  DerivedConstants c;
  Interval a = spec.a.bounds();
  c.a_minus = a.lo;
  c.a_plus = a.hi;
  for (const PapFunction& f : spec.b) {
    Interval b = f.bounds();
    c.b_minus.push_back(b.lo);
    c.b_plus.push_back(b.hi);
    c.sum_b_minus += b.lo;
    c.sum_b_plus += b.hi;
  }
  c.H_plus_recomputed = harvest_sup(spec, range.k, range.M);
  c.H_minus_recomputed = harvest_inf(spec, range.k, range.M);
  c.L_recomputed = harvest_lipschitz(spec, range.k, range.M);
  c.H_plus = ovr.H_plus.value_or(c.H_plus_recomputed);
  c.H_minus = ovr.H_minus.value_or(c.H_minus_recomputed);
  c.L = ovr.L.value_or(spec.lipschitz);
  c.r = max_delay(spec);
  if (range.k > 0.0 && range.M > range.k)
    c.C = contraction_coefficient(spec.m, spec.n, range.k, range.M);
  return c;
}

}  // namespace

HypothesisReport check_all(const ModelSpec& spec, const RangeParams& range,
                           const Overrides& ovr) {
  spec.validate();
  HypothesisReport rep;
  rep.constants = derive_constants(spec, range, ovr);
  const DerivedConstants& c = rep.constants;
  const double k = range.k, M = range.M;

  // H1: structural box condition (violations are a failed check, not an error)
  if (k > 0.0 && M > k) {
    if (spec.m < spec.n) {
      double peak = flux_argmax(spec.m, spec.n);
      rep.h1_argmax = peak;
      if (k < peak && M > peak) {
        double kt = companion_point(spec.m, spec.n, k);
        rep.h1_k_tilde = kt;
        rep.h1_pass = (M <= kt);
      }
    } else {
      rep.h1_pass = true;
    }
  }

  rep.h2_value = -c.a_minus * M + c.sum_b_plus - c.H_minus;
  rep.h3_value = -c.a_plus * k +
                 c.sum_b_minus * flux(spec.m, spec.n, k) - c.H_plus;
  RateFnParams p{c.a_minus, c.sum_b_plus, c.C, c.L, c.r};
  rep.h4_value = eval_rate_function(RateKind::StabilityDelta, p, 0.0);
  rep.h2_pass = rep.h2_value < 0.0;
  rep.h3_pass = rep.h3_value > 0.0;
  rep.h4_pass = rep.h4_value < 0.0;
  rep.extinction_pass = extinction_condition(spec);
  rep.all_pass = rep.h1_pass && rep.h2_pass && rep.h3_pass && rep.h4_pass;
  return rep;
}

bool extinction_condition(const ModelSpec& spec) {
  double sum_b_plus = 0.0;
  for (const PapFunction& f : spec.b) sum_b_plus += f.bounds().hi;
  return spec.a.bounds().lo > sum_b_plus;
}

RateFnParams rate_params(const ModelSpec& spec, const RangeParams& range,
                         const Overrides& ovr) {
  DerivedConstants c = derive_constants(spec, range, ovr);
  return {c.a_minus, c.sum_b_plus, c.C, c.L, c.r};
}

double eval_rate_function(RateKind kind, const RateFnParams& p, double u) {
  switch (kind) {
    case RateKind::ExtinctionG:
      return u - p.a_minus + p.sum_b_plus * std::exp(u * p.r);
    case RateKind::ContractionGamma:
      return -p.a_minus + (p.sum_b_plus * p.C + p.L) * std::exp(u);
    case RateKind::StabilityDelta:
      return u - p.a_minus + (p.sum_b_plus * p.C + p.L) * std::exp(u * p.r);
  }
  return 0.0;
}

RateCertificate rate_bisect(RateKind kind, const ModelSpec& spec,
                            const RangeParams& range, const Overrides& ovr) {
  RateFnParams p = rate_params(spec, range, ovr);
  auto F = [&](double u) { return eval_rate_function(kind, p, u); };
  RateCertificate cert;
  cert.kind = kind;
  cert.value_at_zero = F(0.0);
  if (!(cert.value_at_zero < 0.0)) {
    std::ostringstream os;
    os << "rate_bisect: condition not satisfiable, F(0) = "
       << cert.value_at_zero;
    throw ConditionError(os.str());
  }
  double u_max = 1.0;
  if (kind == RateKind::StabilityDelta)
    u_max = p.r > 0.0 ? 10.0 / p.r : 1e3;
  if (F(u_max) < 0.0) {
    // the whole bracket is negative; u_max is the largest admitted rate
    cert.rate = u_max;
    cert.bisection_residual = 0.0;
    return cert;
  }
  double lo = 0.0, hi = u_max;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    double mid = 0.5 * (lo + hi);
    (F(mid) < 0.0 ? lo : hi) = mid;
  }
  cert.bisection_residual = hi - lo;
  cert.rate = lo - 1e-6;
  if (cert.rate <= 0.0) cert.rate = 0.5 * lo;  // degenerate tiny-rate case
  return cert;
}

}  // namespace hemopap
