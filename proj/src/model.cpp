#include "hemopap/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hemopap {

double harvest_shape_eval(HarvestShape shape, double x) {
  switch (shape) {
    case HarvestShape::None:
      return 0.0;
    case HarvestShape::Rational:
      return x / (1.0 + x * x);
    case HarvestShape::Saturating:
      return x / (1.0 + std::fabs(x));
  }
  return 0.0;
}

double harvest_shape_max(HarvestShape shape, double lo, double hi) {
  switch (shape) {
    case HarvestShape::None:
      return 0.0;
    case HarvestShape::Rational: {
      // unimodal on [0, inf) with peak 1/2 at x = 1
      if (lo <= 1.0 && hi >= 1.0) return 0.5;
      double a = harvest_shape_eval(shape, lo);
      double b = std::isinf(hi) ? 0.0 : harvest_shape_eval(shape, hi);
      return std::max(a, b);
    }
    case HarvestShape::Saturating:
      return std::isinf(hi) ? 1.0 : harvest_shape_eval(shape, hi);
  }
  return 0.0;
}

double harvest_shape_min(HarvestShape shape, double lo, double hi) {
  switch (shape) {
    case HarvestShape::None:
      return 0.0;
    case HarvestShape::Rational: {
      double a = harvest_shape_eval(shape, lo);
      double b = std::isinf(hi) ? 0.0 : harvest_shape_eval(shape, hi);
      return std::min(a, b);
    }
    case HarvestShape::Saturating:
      return harvest_shape_eval(shape, lo);
  }
  return 0.0;
}

double harvest_shape_lipschitz(HarvestShape shape, double lo, double hi) {
  switch (shape) {
    case HarvestShape::None:
      return 0.0;
    case HarvestShape::Rational: {
      // s'(x) = (1-x^2)/(1+x^2)^2: candidates are the endpoints, plus the
      // interior extremum of s' at sqrt(3) and the value 1 at x = 0.
      auto ds = [](double x) {
        double d = 1.0 + x * x;
        return std::fabs((1.0 - x * x) / (d * d));
      };
      double best = ds(lo);
      if (!std::isinf(hi)) best = std::max(best, ds(hi));
      const double s3 = 1.7320508075688772;
      if (lo <= s3 && hi >= s3) best = std::max(best, 0.125);
      return best;
    }
    case HarvestShape::Saturating: {
      // s'(x) = 1/(1+x)^2 on x >= 0, decreasing
      double d = 1.0 + lo;
      return 1.0 / (d * d);
    }
  }
  return 0.0;
}

void ModelSpec::validate() const {
  if (!(m > 1.0)) throw std::invalid_argument("model: requires m > 1");
  if (!(m <= n)) throw std::invalid_argument("model: requires m <= n");
  if (b.size() != tau.size())
    throw std::invalid_argument("model: b and tau counts differ");
  if (!(a.bounds().lo > 0.0))
    throw std::invalid_argument("model: inf a must be > 0");
  for (const PapFunction& f : b)
    if (!(f.bounds().lo >= 0.0))
      throw std::invalid_argument("model: production weights must be >= 0");
  for (const PapFunction& f : tau)
    if (!(f.bounds().lo >= 0.0))
      throw std::invalid_argument("model: delays must be >= 0");
  if (!(sigma.bounds().lo >= 0.0))
    throw std::invalid_argument("model: harvesting delay must be >= 0");
  if (harvest.shape != HarvestShape::None && !(harvest.c.bounds().lo >= 0.0))
    throw std::invalid_argument("model: harvesting weight must be >= 0");
  if (!(lipschitz >= 0.0))
    throw std::invalid_argument("model: Lipschitz constant must be >= 0");
}

double flux(double m, double n, double u) {
  if (!(u >= 0.0)) throw std::domain_error("flux: state must be >= 0");
  double un = std::pow(u, n);
  return std::pow(u, m) / (1.0 + un);
}

double flux_derivative(double m, double n, double u) {
  if (!(u >= 0.0)) throw std::domain_error("flux_derivative: state must be >= 0");
  double un = std::pow(u, n);
  double d = 1.0 + un;
  return std::pow(u, m - 1.0) * (m - (n - m) * un) / (d * d);
}

double flux_argmax(double m, double n) {
  if (!(m < n)) throw std::invalid_argument("flux_argmax: requires m < n");
  return std::pow(m / (n - m), 1.0 / n);
}

double companion_point(double m, double n, double k) {
  if (!(m < n))
    throw std::invalid_argument("companion_point: requires m < n");
  double peak = flux_argmax(m, n);
  if (!(k > 0.0) || !(k < peak))
    throw std::invalid_argument(
        "companion_point: requires 0 < k below the flux maximum");
  double target = flux(m, n, k);
  // flux decreases to 0 beyond the peak, so a bracket always exists
  double hi = std::max(2.0 * peak, 1.0);
  while (flux(m, n, hi) > target) hi *= 2.0;
  double lo = peak;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double v = flux(m, n, mid);
    if (std::fabs(v - target) <= 1e-12) return mid;
    (v > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double rhs(const ModelSpec& spec, double t, double x_now,
           std::span<const double> x_delayed, double x_harvest_delayed) {
  if (!(x_now >= 0.0) || !(x_harvest_delayed >= 0.0))
    throw std::domain_error("rhs: negative state");
  if (x_delayed.size() != spec.b.size())
    throw std::invalid_argument("rhs: wrong delayed-state count");
  double v = -spec.a.eval(t) * x_now;
  for (std::size_t i = 0; i < spec.b.size(); ++i) {
    if (!(x_delayed[i] >= 0.0)) throw std::domain_error("rhs: negative state");
    v += spec.b[i].eval(t) * flux(spec.m, spec.n, x_delayed[i]);
  }
  if (spec.harvest.shape != HarvestShape::None)
    v -= spec.harvest.c.eval(t) *
         harvest_shape_eval(spec.harvest.shape, x_harvest_delayed);
  return v;
}

double max_delay(const ModelSpec& spec) {
  double r = spec.sigma.bounds().hi;
  for (const PapFunction& f : spec.tau) r = std::max(r, f.bounds().hi);
  return r;
}

double harvest_sup(const ModelSpec& spec, double x_lo, double x_hi) {
  if (spec.harvest.shape == HarvestShape::None) return 0.0;
  return spec.harvest.c.bounds().hi *
         harvest_shape_max(spec.harvest.shape, x_lo, x_hi);
}

double harvest_inf(const ModelSpec& spec, double x_lo, double x_hi) {
  if (spec.harvest.shape == HarvestShape::None) return 0.0;
  return spec.harvest.c.bounds().lo *
         harvest_shape_min(spec.harvest.shape, x_lo, x_hi);
}

double harvest_lipschitz(const ModelSpec& spec, double x_lo, double x_hi) {
  if (spec.harvest.shape == HarvestShape::None) return 0.0;
  return spec.harvest.c.bounds().hi *
         harvest_shape_lipschitz(spec.harvest.shape, x_lo, x_hi);
}

double contraction_coefficient(double m, double n, double k, double M) {
  if (!(k > 0.0) || !(M > k))
    throw std::invalid_argument("contraction_coefficient: requires 0 < k < M");
  double kn = std::pow(k, n);
  double d = 1.0 + kn;
  return ((n - m) / 4.0 + m / (d * d)) * std::pow(M, m - 1.0);
}

}  // namespace hemopap
