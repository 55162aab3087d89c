#include "hemopap/pap_function.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "hemopap/parallel.hpp"

namespace hemopap {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBumpPeak = 8.0 / kPi * 0.5;  // max of (8/pi)sqrt(s-s^2) = 4/pi
}  // namespace

struct ApExpr::Node {
  Kind kind = Kind::Const;
  double a = 0.0;
  double b = 0.0;
  std::vector<ApExpr> kids;
};

ApExpr::ApExpr() : node_(std::make_shared<const Node>()) {}
ApExpr::ApExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ApExpr ApExpr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->a = c;
  return ApExpr(std::move(n));
}

ApExpr ApExpr::cosine(double freq, double phase) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cos;
  n->a = freq;
  n->b = phase;
  return ApExpr(std::move(n));
}

ApExpr ApExpr::sine(double freq, double phase) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sin;
  n->a = freq;
  n->b = phase;
  return ApExpr(std::move(n));
}

ApExpr ApExpr::sum(std::vector<ApExpr> terms) {
  if (terms.empty()) return constant(0.0);
  if (terms.size() == 1) return terms[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->kids = std::move(terms);
  return ApExpr(std::move(n));
}

ApExpr ApExpr::scale(double factor, ApExpr inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scale;
  n->a = factor;
  n->kids.push_back(std::move(inner));
  return ApExpr(std::move(n));
}

ApExpr ApExpr::abs(ApExpr inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->kids.push_back(std::move(inner));
  return ApExpr(std::move(n));
}

ApExpr ApExpr::square(ApExpr inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Square;
  n->kids.push_back(std::move(inner));
  return ApExpr(std::move(n));
}

double ApExpr::eval(double t) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return n.a;
    case Kind::Cos:
      return std::cos(n.a * t + n.b);
    case Kind::Sin:
      return std::sin(n.a * t + n.b);
    case Kind::Sum: {
      double s = 0.0;
      for (const ApExpr& k : n.kids) s += k.eval(t);
      return s;
    }
    case Kind::Scale:
      return n.a * n.kids[0].eval(t);
    case Kind::Abs:
      return std::fabs(n.kids[0].eval(t));
    case Kind::Square: {
      double v = n.kids[0].eval(t);
      return v * v;
    }
  }
  return 0.0;
}

Interval ApExpr::bounds() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const:
      return {n.a, n.a};
    case Kind::Cos:
    case Kind::Sin:
      return {-1.0, 1.0};
    case Kind::Sum: {
      Interval r{0.0, 0.0};
      for (const ApExpr& k : n.kids) {
        Interval b = k.bounds();
        r.lo += b.lo;
        r.hi += b.hi;
      }
      return r;
    }
    case Kind::Scale: {
      Interval b = n.kids[0].bounds();
      if (n.a >= 0.0) return {n.a * b.lo, n.a * b.hi};
      return {n.a * b.hi, n.a * b.lo};
    }
    case Kind::Abs: {
      Interval b = n.kids[0].bounds();
      if (b.lo >= 0.0) return b;
      if (b.hi <= 0.0) return {-b.hi, -b.lo};
      return {0.0, std::max(-b.lo, b.hi)};
    }
    case Kind::Square: {
      Interval b = n.kids[0].bounds();
      Interval a;  // enclosure of |inner|
      if (b.lo >= 0.0)
        a = b;
      else if (b.hi <= 0.0)
        a = {-b.hi, -b.lo};
      else
        a = {0.0, std::max(-b.lo, b.hi)};
      return {a.lo * a.lo, a.hi * a.hi};
    }
  }
  return {0.0, 0.0};
}

ApExpr::Kind ApExpr::kind() const { return node_->kind; }
double ApExpr::param0() const { return node_->a; }
double ApExpr::param1() const { return node_->b; }
std::span<const ApExpr> ApExpr::children() const {
  return {node_->kids.data(), node_->kids.size()};
}

double bump_train(double t) {
  double u = std::fabs(t);
  // Block starts a_n = (n^3 - n)/3 stay exact in 64-bit integers up to the
  // point where doubles cannot separate adjacent bumps anyway.
  if (!(u >= 0.0) || u >= 2.9e18) return 0.0;
  auto block_start = [](std::int64_t n) -> double {
    return static_cast<double>((n * n * n - n) / 3);  // divisible by 3 exactly
  };
  std::int64_t n =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(
                                    std::cbrt(3.0 * u))) -
                                    2);
  while (n > 1 && block_start(n) > u) --n;
  while (block_start(n + 1) <= u) ++n;
  double off = u - block_start(n);
  double i = std::floor(off);
  if (i >= static_cast<double>(n)) return 0.0;  // in the gap after n bumps
  double s = off - i;
  return (8.0 / kPi) * std::sqrt(std::max(0.0, s * (1.0 - s)));
}

double ErgodicTerm::eval(double t) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::RationalDecay:
      return c / (1.0 + t * t);
    case Kind::GaussianDecay:
      return c * std::exp(-t * t);
    case Kind::BumpTrain:
      return c * bump_train(t);
  }
  return 0.0;
}

Interval ErgodicTerm::bounds() const {
  double peak = 0.0;
  switch (kind) {
    case Kind::Zero:
      return {0.0, 0.0};
    case Kind::RationalDecay:
    case Kind::GaussianDecay:
      peak = 1.0;
      break;
    case Kind::BumpTrain:
      peak = kBumpPeak;
      break;
  }
  return {std::min(0.0, c * peak), std::max(0.0, c * peak)};
}

PapFunction::PapFunction(ApExpr ap, std::vector<ErgodicTerm> ergodic)
    : ap_(std::move(ap)), ergodic_(std::move(ergodic)) {}

PapFunction PapFunction::constant(double c) {
  return PapFunction(ApExpr::constant(c));
}

double PapFunction::eval(double t) const {
  double v = ap_.eval(t);
  for (const ErgodicTerm& e : ergodic_) v += e.eval(t);
  return v;
}

Interval PapFunction::bounds() const {
  Interval r = ap_.bounds();
  for (const ErgodicTerm& e : ergodic_) {
    Interval b = e.bounds();
    r.lo += b.lo;
    r.hi += b.hi;
  }
  return r;
}

namespace {

std::pair<double, double> sampled_extrema_impl(const PapFunction& f,
                                               double t_lo, double t_hi,
                                               double step, bool parallel) {
  if (!(step > 0.0) || !(t_hi >= t_lo))
    throw std::invalid_argument("sampled_extrema: bad window or step");
  std::int64_t count =
      static_cast<std::int64_t>(std::floor((t_hi - t_lo) / step + 1e-9)) + 1;
  par::MinMax mm = par::chunked_minmax(
      count, [&](std::int64_t j) { return f.eval(t_lo + static_cast<double>(j) * step); },
      parallel);
  return {mm.mn, mm.mx};
}

double ergodic_mean_impl(const std::function<double(double)>& f, double T,
                         double quad_step, bool parallel) {
  if (!(T > 0.0) || !(quad_step > 0.0))
    throw std::invalid_argument("ergodic_mean: T and quad_step must be > 0");
  std::int64_t n =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                    std::ceil(2.0 * T / quad_step - 1e-9)));
  double h = 2.0 * T / static_cast<double>(n);
  double s = par::chunked_sum(
      n + 1,
      [&](std::int64_t j) {
        double w = (j == 0 || j == n) ? 0.5 : 1.0;
        return w * std::fabs(f(-T + static_cast<double>(j) * h));
      },
      parallel);
  return s * h / (2.0 * T);
}

}  // namespace

std::pair<double, double> sampled_extrema(const PapFunction& f, double t_lo,
                                          double t_hi, double step) {
  return sampled_extrema_impl(f, t_lo, t_hi, step, par::enabled());
}

double ergodic_mean(const PapFunction& f, double T, double quad_step) {
  return ergodic_mean_impl([&](double t) { return f.eval(t); }, T, quad_step,
                           par::enabled());
}

double ergodic_mean(const std::function<double(double)>& f, double T,
                    double quad_step) {
  return ergodic_mean_impl(f, T, quad_step, par::enabled());
}

namespace detail {

std::pair<double, double> sampled_extrema_serial(const PapFunction& f,
                                                 double t_lo, double t_hi,
                                                 double step) {
  return sampled_extrema_impl(f, t_lo, t_hi, step, false);
}

double ergodic_mean_serial(const std::function<double(double)>& f, double T,
                           double quad_step) {
  return ergodic_mean_impl(f, T, quad_step, false);
}

}  // namespace detail

}  // namespace hemopap
