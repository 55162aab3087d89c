#pragma once

// Pseudo almost periodic coefficient functions, represented as an explicit
// decomposition f = ap + sum(ergodic): a finite trigonometric expression tree
// (the almost periodic part) plus terms whose sliding mean
// (1/2T) int_{-T}^{T} |phi| vanishes as T grows (the ergodic perturbation).
// The split representation is what makes rigorous range bounds possible.

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace hemopap {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Almost periodic expression tree. Immutable; nodes are shared, so copies are
// cheap and instances can be evaluated concurrently.
class ApExpr {
 public:
  enum class Kind { Const, Cos, Sin, Sum, Scale, Abs, Square };

  ApExpr();  // Const(0)

  static ApExpr constant(double c);
  static ApExpr cosine(double freq, double phase);  // cos(freq*t + phase)
  static ApExpr sine(double freq, double phase);    // sin(freq*t + phase)
  static ApExpr sum(std::vector<ApExpr> terms);
  static ApExpr scale(double factor, ApExpr inner);
  static ApExpr abs(ApExpr inner);
  static ApExpr square(ApExpr inner);

  double eval(double t) const;

  // Interval enclosure of the range over all of R. Sound but not tight:
  // trig terms contribute [-1, 1], sums add endpoint-wise.
  Interval bounds() const;

  Kind kind() const;
  double param0() const;  // Const: value; Cos/Sin: freq; Scale: factor
  double param1() const;  // Cos/Sin: phase
  std::span<const ApExpr> children() const;

 private:
  struct Node;
  explicit ApExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// The portable bump train omega(t): block n >= 1 starts at a_n = (n^3 - n)/3
// and carries n bumps of unit width and unit area, g(s) = (8/pi)*sqrt(s - s^2)
// on each [a_n + i, a_n + i + 1], i < n; zero elsewhere; extended evenly.
// Bounded by 4/pi, continuous, not uniformly continuous, and its sliding mean
// decays like T^(-1/3): ergodic but not almost periodic.
double bump_train(double t);

struct ErgodicTerm {
  enum class Kind { Zero, RationalDecay, GaussianDecay, BumpTrain };
  Kind kind = Kind::Zero;
  double c = 0.0;  // coefficient: c/(1+t^2), c*exp(-t^2), c*omega(t)

  double eval(double t) const;
  Interval bounds() const;
};

class PapFunction {
 public:
  PapFunction() = default;
  explicit PapFunction(ApExpr ap, std::vector<ErgodicTerm> ergodic = {});
  static PapFunction constant(double c);

  double eval(double t) const;
  double operator()(double t) const { return eval(t); }
  Interval bounds() const;

  const ApExpr& ap() const { return ap_; }
  const std::vector<ErgodicTerm>& ergodic() const { return ergodic_; }

 private:
  ApExpr ap_;
  std::vector<ErgodicTerm> ergodic_;
};

// Grid min/max of f over {t_lo + j*step <= t_hi}. Diagnostics only; the
// rigorous range comes from bounds().
std::pair<double, double> sampled_extrema(const PapFunction& f, double t_lo,
                                          double t_hi, double step);

// Trapezoid estimate of (1/2T) int_{-T}^{T} |f|. The step is snapped so the
// endpoints land exactly on -T and T.
double ergodic_mean(const PapFunction& f, double T, double quad_step);
double ergodic_mean(const std::function<double(double)>& f, double T,
                    double quad_step);

namespace detail {
// Serial references for the OpenMP kernels above (same chunked accumulation,
// so results must match bit for bit).
std::pair<double, double> sampled_extrema_serial(const PapFunction& f,
                                                 double t_lo, double t_hi,
                                                 double step);
double ergodic_mean_serial(const std::function<double(double)>& f, double T,
                           double quad_step);
}  // namespace detail

}  // namespace hemopap
