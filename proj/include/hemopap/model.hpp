#pragma once

// Hematopoiesis model with nonlinear harvesting and time-varying delays:
//
//   x'(t) = -a(t) x(t)
//           + sum_i b_i(t) * x(t - tau_i(t))^m / (1 + x(t - tau_i(t))^n)
//           - H(t, x(t - sigma(t))),        1 < m <= n,
//
// where H(t, x) = c(t) * s(x) with a bounded harvesting shape s.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hemopap/pap_function.hpp"

namespace hemopap {

enum class HarvestShape { None, Rational, Saturating };

// s(x): Rational = x/(1+x^2), Saturating = x/(1+|x|), None = 0.
double harvest_shape_eval(HarvestShape shape, double x);
// Extrema and Lipschitz constant of s over [lo, hi] (hi may be +inf).
double harvest_shape_max(HarvestShape shape, double lo, double hi);
double harvest_shape_min(HarvestShape shape, double lo, double hi);
double harvest_shape_lipschitz(HarvestShape shape, double lo, double hi);

struct HarvestSpec {
  PapFunction c;  // nonnegative time weight
  HarvestShape shape = HarvestShape::None;
};

struct ModelSpec {
  double m = 2.0;
  double n = 2.0;
  PapFunction a;                // loss rate, inf a > 0
  std::vector<PapFunction> b;   // production weights, >= 0
  std::vector<PapFunction> tau; // production delays, >= 0 (same count as b)
  PapFunction sigma;            // harvesting delay, >= 0
  HarvestSpec harvest;
  double lipschitz = 0.0;       // supplied Lipschitz constant L of x -> H(t,x)

  std::size_t delay_count() const { return b.size(); }
  void validate() const;  // throws std::invalid_argument
};

struct RangeParams {
  double k = 0.0;  // lower edge of the invariant box
  double M = 0.0;  // upper edge
  std::optional<double> k_tilde;  // companion of k (filled by check_all, m < n)
};

// Production nonlinearity u^m/(1+u^n) and its derivative
// u^(m-1) (m - (n-m) u^n) / (1+u^n)^2. Domain u >= 0.
double flux(double m, double n, double u);
double flux_derivative(double m, double n, double u);

// Location of the flux maximum for m < n: (m/(n-m))^(1/n).
double flux_argmax(double m, double n);

// For m < n and 0 < k < argmax: the unique point on the decreasing branch
// with flux(k_tilde) = flux(k). Bisection to a 1e-12 flux residual.
double companion_point(double m, double n, double k);

// Right-hand side of the model at time t given the current state and the
// delayed states (one per production term, then the harvesting lookup).
double rhs(const ModelSpec& spec, double t, double x_now,
           std::span<const double> x_delayed, double x_harvest_delayed);

// sup over t of all delays: horizon r of the required history.
double max_delay(const ModelSpec& spec);

// Bounds of H(t, x) = c(t) s(x) over t in R, x in [x_lo, x_hi].
double harvest_sup(const ModelSpec& spec, double x_lo, double x_hi);
double harvest_inf(const ModelSpec& spec, double x_lo, double x_hi);
// sup over t of the Lipschitz constant of x -> H(t, x) on [x_lo, x_hi].
double harvest_lipschitz(const ModelSpec& spec, double x_lo, double x_hi);

// Mean-value bound for the flux on [k, M]:
// |flux(x) - flux(y)| <= [(n-m)/4 + m/(1+k^n)^2] M^(m-1) |x - y|.
double contraction_coefficient(double m, double n, double k, double M);

}  // namespace hemopap
