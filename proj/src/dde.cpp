#include "hemopap/dde.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hemopap {

namespace {

double hermite(double t_a, double x_a, double d_a, double t_b, double x_b,
               double d_b, double t) {
  double w = t_b - t_a;
  double th = (t - t_a) / w;
  double th2 = th * th, th3 = th2 * th;
  return (2.0 * th3 - 3.0 * th2 + 1.0) * x_a + (th3 - 2.0 * th2 + th) * w * d_a +
         (-2.0 * th3 + 3.0 * th2) * x_b + (th3 - th2) * w * d_b;
}

constexpr double kUndershoot = 1e-9;

}  // namespace

double GridFn::operator()(double t) const {
  if (values.size() == 1) return values[0];
  if (t <= t0) return values.front();
  double pos = (t - t0) / step;
  auto n = static_cast<std::ptrdiff_t>(values.size());
  auto j = static_cast<std::ptrdiff_t>(pos);
  if (j >= n - 1) return values.back();
  double th = pos - static_cast<double>(j);
  return values[j] + th * (values[j + 1] - values[j]);
}

HistoryFn::HistoryFn() = default;

HistoryFn HistoryFn::constant(double v) {
  HistoryFn f;
  f.kind_ = Kind::Constant;
  f.value_ = v;
  return f;
}

HistoryFn HistoryFn::expression(ApExpr e) {
  HistoryFn f;
  f.kind_ = Kind::Expression;
  f.expr_ = std::move(e);
  return f;
}

HistoryFn HistoryFn::grid(GridFn g) {
  HistoryFn f;
  f.kind_ = Kind::Grid;
  f.grid_ = std::make_shared<const GridFn>(std::move(g));
  return f;
}

double HistoryFn::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Expression:
      return std::max(0.0, expr_.eval(t));
    case Kind::Grid:
      return (*grid_)(t);
  }
  return 0.0;
}

void HistoryFn::validate(double t0, double r) const {
  if (!((*this)(t0) > 0.0))
    throw std::invalid_argument("history: value at t0 must be > 0");
  if (kind_ == Kind::Grid) {
    if (grid_->values.empty())
      throw std::invalid_argument("history: empty grid");
    if (grid_->t0 > t0 - r + 1e-12 * std::max(1.0, std::fabs(t0)) ||
        grid_->t_end() < t0 - 1e-12 * std::max(1.0, std::fabs(t0)))
      throw std::invalid_argument("history: grid does not cover [t0 - r, t0]");
    for (double v : grid_->values)
      if (!(v >= 0.0))
        throw std::invalid_argument("history: negative grid value");
  }
}

std::string HistoryFn::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Constant:
      os << "constant(" << value_ << ")";
      break;
    case Kind::Expression:
      os << "expression";
      break;
    case Kind::Grid:
      os << "grid[" << grid_->t0 << ", " << grid_->t_end() << "]";
      break;
  }
  return os.str();
}

double Trajectory::eval(double t) const {
  double tol = 1e-9 * std::max(1.0, std::fabs(t_end));
  if (t < t0 - r - tol || t > t_end + tol)
    throw std::out_of_range("trajectory: evaluation outside [t0 - r, t_end]");
  if (t <= t0) return history(t);
  if (t >= t_end) return values.back();
  auto j = static_cast<std::size_t>((t - t0) / h);
  if (j >= times.size() - 1) j = times.size() - 2;
  // guard index against roundoff in the division above
  while (j > 0 && t < times[j]) --j;
  while (j + 2 < times.size() && t > times[j + 1]) ++j;
  return hermite(times[j], values[j], derivs[j], times[j + 1], values[j + 1],
                 derivs[j + 1], t);
}

Trajectory integrate_core(const DdeField& field, const HistoryFn& phi,
                          double t0, double t_end, double h, double r,
                          std::uint64_t fingerprint) {
  if (!(h > 0.0) || !(t_end > t0))
    throw std::invalid_argument("integrate: requires t_end > t0 and h > 0");
  phi.validate(t0, r);

  Trajectory traj;
  traj.t0 = t0;
  traj.t_end = t_end;
  traj.h = h;
  traj.r = r;
  traj.history = phi;
  traj.fingerprint = fingerprint;

  auto steps = static_cast<std::size_t>(
      std::ceil((t_end - t0) / h - 1e-9));
  traj.times.reserve(steps + 1);
  traj.values.reserve(steps + 1);
  traj.derivs.reserve(steps + 1);

  bool ok = true;
  std::string why;
  auto fail = [&](const std::string& msg) {
    if (ok) {
      ok = false;
      why = msg;
    }
  };

  // Absorb roundoff-scale undershoot; anything worse is a genuine positivity
  // violation and the run fails loudly rather than being clamped.
  auto guard_state = [&](double v, const char* where) -> double {
    if (v >= 0.0) return v;
    if (v >= -kUndershoot) return 0.0;
    std::ostringstream os;
    os << "positivity violation (" << where << "): x = " << v;
    fail(os.str());
    return 0.0;
  };

  std::size_t completed = 0;  // highest node with value and derivative stored

  // Delayed lookup at time s, evaluated while the solver sits at (t_ref,
  // x_ref). s == t_ref (vanishing delay at the evaluation point) returns
  // x_ref; history handles s <= t0; completed segments interpolate; the
  // in-progress step extrapolates from the segment before it.
  auto lookup = [&](double s, double t_ref, double x_ref) -> double {
    if (s >= t_ref - 1e-12 * std::max(1.0, std::fabs(t_ref))) return x_ref;
    if (s <= t0) return phi(s);
    if (completed >= 1) {
      auto j = static_cast<std::size_t>((s - t0) / h);
      if (j >= completed) j = completed - 1;  // includes extrapolation
      while (j > 0 && s < traj.times[j]) --j;
      while (j + 1 < completed && s > traj.times[j + 1]) ++j;
      return hermite(traj.times[j], traj.values[j], traj.derivs[j],
                     traj.times[j + 1], traj.values[j + 1], traj.derivs[j + 1],
                     s);
    }
    // first step: Taylor from (t0, x0, dx0)
    return traj.values[0] + (s - t0) * traj.derivs[0];
  };

  std::vector<double> dvals(field.delays.size());
  auto eval_f = [&](double te, double xe) -> double {
    for (std::size_t i = 0; i < field.delays.size(); ++i) {
      double d = field.delays[i](te);
      dvals[i] = guard_state(lookup(te - d, te, xe), "delayed lookup");
    }
    return field.f(te, guard_state(xe, "state"), dvals);
  };

  double x0 = phi(t0);
  traj.times.push_back(t0);
  traj.values.push_back(x0);
  traj.derivs.push_back(0.0);
  traj.derivs[0] = eval_f(t0, x0);

  for (std::size_t k = 0; k < steps && ok; ++k) {
    double t = traj.times[k];
    double tn = std::min(t0 + static_cast<double>(k + 1) * h, t_end);
    double hk = tn - t;
    double x = traj.values[k];
    double k1 = traj.derivs[k];
    double k2 = eval_f(t + 0.5 * hk, x + 0.5 * hk * k1);
    double k3 = eval_f(t + 0.5 * hk, x + 0.5 * hk * k2);
    double k4 = eval_f(tn, x + hk * k3);
    double xn = x + hk / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(xn)) {
      fail("non-finite state");
      break;
    }
    if (xn < 0.0) {
      if (xn >= -kUndershoot) {
        xn = 0.0;
      } else {
        std::ostringstream os;
        os << "positivity violation at t = " << tn << ": x = " << xn;
        fail(os.str());
        break;
      }
    }
    traj.times.push_back(tn);
    traj.values.push_back(xn);
    // completed stays at k while the new node's derivative is evaluated, so
    // lookups inside (t_k, t_{k+1}) extrapolate instead of reading the
    // not-yet-stored derivative; s == t_{k+1} hits the x_ref fast path.
    traj.derivs.push_back(eval_f(tn, xn));
    completed = k + 1;
  }

  traj.failed = !ok;
  traj.failure = why;
  if (traj.failed) traj.t_end = traj.times.back();
  return traj;
}

Trajectory integrate(const ModelSpec& spec, const HistoryFn& phi, double t0,
                     double t_end, double h) {
  spec.validate();
  const double r = max_delay(spec);
  DdeField field;
  const std::size_t nb = spec.delay_count();
  for (std::size_t i = 0; i < nb; ++i)
    field.delays.emplace_back(
        [&spec, i](double t) { return spec.tau[i].eval(t); });
  field.delays.emplace_back([&spec](double t) { return spec.sigma.eval(t); });
  field.f = [&spec, nb](double t, double x, std::span<const double> d) {
    return rhs(spec, t, x, d.subspan(0, nb), d[nb]);
  };

  std::uint64_t fp = 1469598103934665603ull;  // FNV offset; spec identity tag
  auto mix = [&fp](double v) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(v));
    __builtin_memcpy(&u, &v, sizeof(u));
    fp ^= u;
    fp *= 1099511628211ull;
  };
  mix(spec.m);
  mix(spec.n);
  mix(static_cast<double>(nb));
  mix(t0);
  mix(t_end);
  mix(h);

  Trajectory traj = integrate_core(field, phi, t0, t_end, h, r, fp);
  double sum_b_plus = 0.0;
  for (const PapFunction& f : spec.b) sum_b_plus += f.bounds().hi;
  traj.apriori_bound = phi(t0) + sum_b_plus / spec.a.bounds().lo;
  return traj;
}

PermanenceReport monitor(const Trajectory& traj, double k, double M,
                         double transient) {
  if (traj.values.empty())
    throw std::invalid_argument("monitor: empty trajectory");
  PermanenceReport rep;
  rep.t_from = traj.t0 + transient;
  rep.t_to = traj.times.back();
  bool any = false;
  rep.full_max = traj.values[0];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    double v = traj.values[i];
    rep.full_max = std::max(rep.full_max, v);
    if (traj.times[i] < rep.t_from) continue;
    if (!any) {
      rep.min_x = rep.max_x = v;
      any = true;
    } else {
      rep.min_x = std::min(rep.min_x, v);
      rep.max_x = std::max(rep.max_x, v);
    }
  }
  rep.lower_pass = any && rep.min_x >= k - 1e-3;
  rep.upper_pass = any && rep.max_x <= M + 1e-3;
  rep.permanent = rep.lower_pass && rep.upper_pass && !traj.failed;
  rep.apriori_bound = traj.apriori_bound;
  rep.apriori_pass =
      traj.apriori_bound > 0.0 && rep.full_max <= traj.apriori_bound + 1e-6;
  return rep;
}

}  // namespace hemopap
