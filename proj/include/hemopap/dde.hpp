#pragma once

// Fixed-step method-of-steps integrator for scalar delay differential
// equations. Classical RK4 over uniform steps; node derivatives are stored so
// delayed lookups and dense output use cubic Hermite interpolation on
// completed segments. Lookups that land inside the step being computed
// (vanishing delays) use Hermite extrapolation from the previous segment.
// Runs are bit-for-bit reproducible for identical inputs.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hemopap/model.hpp"

namespace hemopap {

// Piecewise-linear function on a uniform grid; clamped to the end values
// outside [t0, t_end].
struct GridFn {
  double t0 = 0.0;
  double step = 1.0;
  std::vector<double> values;

  double t_end() const {
    return t0 + step * static_cast<double>(values.size() - 1);
  }
  double operator()(double t) const;
};

// Initial history phi on [t0 - r, t0]; must be >= 0 with phi(t0) > 0.
class HistoryFn {
 public:
  HistoryFn();  // constant 1
  static HistoryFn constant(double v);
  static HistoryFn expression(ApExpr e);  // negative values clipped to 0
  static HistoryFn grid(GridFn g);

  double operator()(double t) const;
  // Throws std::invalid_argument unless the domain covers [t0 - r, t0],
  // phi(t0) > 0, and (grid form) all stored values are >= 0.
  void validate(double t0, double r) const;
  std::string describe() const;

 private:
  enum class Kind { Constant, Expression, Grid };
  Kind kind_ = Kind::Constant;
  double value_ = 1.0;
  ApExpr expr_;
  std::shared_ptr<const GridFn> grid_;
};

struct Trajectory {
  double t0 = 0.0, t_end = 0.0, h = 0.0;
  double r = 0.0;  // history horizon
  std::vector<double> times, values, derivs;
  HistoryFn history;
  bool failed = false;
  std::string failure;
  std::uint64_t fingerprint = 0;
  double apriori_bound = 0.0;  // phi(t0) + sum sup(b_i)/inf(a), 0 if unset

  std::size_t node_count() const { return times.size(); }
  // Dense evaluation on [t0 - r, t_end]; reproduces node values exactly and
  // delegates t <= t0 to the history. Throws std::out_of_range outside.
  double eval(double t) const;
};

// Generic scalar DDE x'(t) = f(t, x(t), x(t - d_1(t)), ..., x(t - d_k(t))).
struct DdeField {
  std::vector<std::function<double(double)>> delays;  // d_i(t) >= 0
  std::function<double(double, double, std::span<const double>)> f;
};

// Negative undershoot within 1e-9 of zero is absorbed (clamped to 0); beyond
// that the run is marked failed with a positivity diagnostic, as is any
// non-finite state. The final step may be shorter than h.
Trajectory integrate_core(const DdeField& field, const HistoryFn& phi,
                          double t0, double t_end, double h, double r,
                          std::uint64_t fingerprint = 0);

// Model rhs wired into the core; r = max_delay(spec).
Trajectory integrate(const ModelSpec& spec, const HistoryFn& phi, double t0,
                     double t_end, double h);

struct PermanenceReport {
  double t_from = 0.0, t_to = 0.0;
  double min_x = 0.0, max_x = 0.0;  // over nodes with t >= t0 + transient
  bool lower_pass = false;          // min_x >= k - 1e-3
  bool upper_pass = false;          // max_x <= M + 1e-3
  bool permanent = false;
  double apriori_bound = 0.0;       // phi(t0) + sum sup(b_i)/inf(a)
  double full_max = 0.0;            // max over the whole run
  bool apriori_pass = false;        // full_max <= apriori_bound + 1e-6
};

PermanenceReport monitor(const Trajectory& traj, double k, double M,
                         double transient);

}  // namespace hemopap
