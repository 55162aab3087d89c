#pragma once

// Sufficient conditions for permanence, existence and attraction of the
// distinguished bounded solution, and the certified exponential rates.
//
//   H1: box structure (m < n: k < (m/(n-m))^(1/n) < M <= k_tilde; m = n: 0 < k < M)
//   H2: -inf(a) M + sum sup(b_i) - inf(H) < 0        (box upper edge repels)
//   H3: -sup(a) k + sum inf(b_i) flux(k) - sup(H) > 0 (box lower edge repels)
//   H4: -inf(a) + sum sup(b_i) C + L < 0             (contraction budget)
//
// with C the flux mean-value coefficient on [k, M]. Rate certificates come
// from bisection on three strictly increasing functions of u:
//
//   G(u)     = u - inf(a) + sum sup(b_i) e^(u r)          (extinction rate)
//   gamma(u) = -inf(a) + (sum sup(b_i) C + L) e^u          (contraction margin)
//   Delta(u) = u - inf(a) + (L + sum sup(b_i) C) e^(u r)   (attraction rate)

#include <optional>
#include <vector>

#include "hemopap/model.hpp"

namespace hemopap {

// User-supplied constants may replace the recomputed harvesting bounds and
// Lipschitz constant; recomputed values are still reported alongside.
struct Overrides {
  std::optional<double> H_plus;
  std::optional<double> H_minus;
  std::optional<double> L;
};

struct DerivedConstants {
  double a_minus = 0.0, a_plus = 0.0;
  std::vector<double> b_minus, b_plus;
  double sum_b_minus = 0.0, sum_b_plus = 0.0;
  double H_plus_recomputed = 0.0, H_minus_recomputed = 0.0;
  double L_recomputed = 0.0;
  double H_plus = 0.0, H_minus = 0.0, L = 0.0;  // effective (after overrides)
  double r = 0.0;                               // max delay
  double C = 0.0;                               // flux mean-value coefficient
};

struct HypothesisReport {
  bool h1_pass = false;
  std::optional<double> h1_argmax;   // m < n only
  std::optional<double> h1_k_tilde;  // m < n only
  double h2_value = 0.0;             // pass iff < 0
  double h3_value = 0.0;             // pass iff > 0
  double h4_value = 0.0;             // pass iff < 0
  bool h2_pass = false, h3_pass = false, h4_pass = false;
  bool extinction_pass = false;      // inf(a) > sum sup(b_i)
  bool all_pass = false;             // H1 && H2 && H3 && H4
  DerivedConstants constants;
};

HypothesisReport check_all(const ModelSpec& spec, const RangeParams& range,
                           const Overrides& ovr = {});

// Strict decay dominance inf(a) > sum sup(b_i); no range needed.
bool extinction_condition(const ModelSpec& spec);

enum class RateKind { ExtinctionG, ContractionGamma, StabilityDelta };

struct RateFnParams {
  double a_minus = 0.0;
  double sum_b_plus = 0.0;
  double C = 0.0;  // unused for G
  double L = 0.0;  // unused for G
  double r = 0.0;
};

RateFnParams rate_params(const ModelSpec& spec, const RangeParams& range,
                         const Overrides& ovr = {});
double eval_rate_function(RateKind kind, const RateFnParams& p, double u);

struct RateCertificate {
  RateKind kind;
  double rate = 0.0;                // largest certified u with F(u) < 0
  double value_at_zero = 0.0;       // F(0), must be < 0 for a rate to exist
  double bisection_residual = 0.0;  // bracket width at termination
};

// Largest u in (0, u_max] with F(u) < 0 (u_max: 1 for G and gamma, 10/r for
// Delta), found by bisection to residual 1e-10 and shrunk by 1e-6 so the
// returned rate is strictly inside the negative region.
// Throws ConditionError when F(0) >= 0.
RateCertificate rate_bisect(RateKind kind, const ModelSpec& spec,
                            const RangeParams& range, const Overrides& ovr = {});

}  // namespace hemopap
