#include "hemopap/picard.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hemopap/errors.hpp"
#include "hemopap/parallel.hpp"

namespace hemopap {

namespace {

double global_harvest_sup(const ModelSpec& spec) {
  return harvest_sup(spec, 0.0, std::numeric_limits<double>::infinity());
}

double tail_bound_at(const ModelSpec& spec, double T_trunc) {
  double sum_b_plus = 0.0;
  for (const PapFunction& f : spec.b) sum_b_plus += f.bounds().hi;
  double a_minus = spec.a.bounds().lo;
  // |integrand| <= sum sup(b_i) * 1 + sup H (fluxes are capped by 1)
  return (sum_b_plus + global_harvest_sup(spec)) *
         std::exp(-a_minus * T_trunc) / a_minus;
}

}  // namespace

GammaResult gamma_apply(const ModelSpec& spec,
                        const std::function<double(double)>& psi, double t,
                        double T_trunc, double quad_step) {
  if (!(T_trunc > 0.0) || !(quad_step > 0.0))
    throw std::invalid_argument("gamma_apply: T_trunc and quad_step must be > 0");
  spec.validate();
  const std::size_t nq = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(T_trunc / quad_step - 1e-9)));
  const double hq = T_trunc / static_cast<double>(nq);
  const double s0 = t - T_trunc;

  // a sampled on the quadrature grid; A[j] = int_{s_j}^{t} a (trapezoid,
  // accumulated once from the right)
  std::vector<double> av(nq + 1), A(nq + 1);
  for (std::size_t j = 0; j <= nq; ++j)
    av[j] = spec.a.eval(s0 + static_cast<double>(j) * hq);
  A[nq] = 0.0;
  for (std::size_t j = nq; j-- > 0;)
    A[j] = A[j + 1] + 0.5 * hq * (av[j] + av[j + 1]);

  const std::size_t nb = spec.delay_count();
  double sum = 0.0;
  for (std::size_t j = 0; j <= nq; ++j) {
    double s = s0 + static_cast<double>(j) * hq;
    double g = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
      double u = std::max(0.0, psi(s - spec.tau[i].eval(s)));
      g += spec.b[i].eval(s) * flux(spec.m, spec.n, u);
    }
    if (spec.harvest.shape != HarvestShape::None) {
      double u = std::max(0.0, psi(s - spec.sigma.eval(s)));
      g -= spec.harvest.c.eval(s) * harvest_shape_eval(spec.harvest.shape, u);
    }
    double w = (j == 0 || j == nq) ? 0.5 : 1.0;
    sum += w * std::exp(-A[j]) * g;
  }
  return {sum * hq, tail_bound_at(spec, T_trunc)};
}

PapSolution picard_solve(const ModelSpec& spec, const RangeParams& range,
                         double w0, double w1, const PicardOptions& opt,
                         const Overrides& ovr) {
  HypothesisReport rep = check_all(spec, range, ovr);
  if (!rep.all_pass) {
    std::ostringstream os;
    os << "picard_solve: hypotheses not satisfied (h1 "
       << (rep.h1_pass ? "pass" : "fail") << ", h2 = " << rep.h2_value
       << ", h3 = " << rep.h3_value << ", h4 = " << rep.h4_value << ")";
    throw ConditionError(os.str());
  }
  if (!(w1 > w0)) throw std::invalid_argument("picard_solve: requires w1 > w0");
  if (!(opt.grid_step > 0.0))
    throw std::invalid_argument("picard_solve: grid_step must be > 0");

  const double hs = opt.grid_step;
  const double a_minus = rep.constants.a_minus;
  double T = opt.T_trunc;
  if (!(T > 0.0)) {
    // smallest depth making the rigorous tail bound < tol/10
    double num = (rep.constants.sum_b_plus + global_harvest_sup(spec));
    T = std::log(num / (a_minus * opt.tol / 10.0)) / a_minus;
    T = std::max(T, 1.0);
  }
  const auto k_trunc = static_cast<std::size_t>(std::ceil(T / hs - 1e-9));
  T = static_cast<double>(k_trunc) * hs;  // snap to the grid
  const double r = max_delay(spec);
  const auto k_hist = static_cast<std::size_t>(std::ceil(r / hs - 1e-9));
  const std::size_t pad = k_trunc + k_hist;
  const auto n_win =
      static_cast<std::size_t>(std::llround((w1 - w0) / hs));
  if (std::fabs(static_cast<double>(n_win) * hs - (w1 - w0)) > 1e-9)
    throw std::invalid_argument(
        "picard_solve: window length must be a multiple of grid_step");
  const std::size_t total = pad + n_win + 1;
  const double pad_t0 = w0 - static_cast<double>(pad) * hs;
  auto t_at = [&](std::size_t j) {
    return pad_t0 + static_cast<double>(j) * hs;
  };

  // Coefficients are fixed across sweeps: sample them once.
  const std::size_t nb = spec.delay_count();
  std::vector<double> av(total), cv(total), sigv(total);
  std::vector<std::vector<double>> bv(nb, std::vector<double>(total));
  std::vector<std::vector<double>> tauv(nb, std::vector<double>(total));
  const bool harvesting = spec.harvest.shape != HarvestShape::None;
  par::parallel_for(
      static_cast<std::int64_t>(total),
      [&](std::int64_t jj) {
        auto j = static_cast<std::size_t>(jj);
        double t = t_at(j);
        av[j] = spec.a.eval(t);
        for (std::size_t i = 0; i < nb; ++i) {
          bv[i][j] = spec.b[i].eval(t);
          tauv[i][j] = spec.tau[i].eval(t);
        }
        if (harvesting) {
          cv[j] = spec.harvest.c.eval(t);
          sigv[j] = spec.sigma.eval(t);
        }
      },
      par::enabled());

  // A[j] = int_{pad_t0}^{t_j} a, so int_s^t = A[t] - A[s].
  std::vector<double> A(total);
  A[0] = 0.0;
  for (std::size_t j = 1; j < total; ++j)
    A[j] = A[j - 1] + 0.5 * hs * (av[j - 1] + av[j]);
  // e^{A} overflows for very long windows; beyond the threshold fall back to
  // per-pair exponentials inside the sweep.
  const bool fast_exp = A[total - 1] < 600.0;
  std::vector<double> expA, expNegA;
  if (fast_exp) {
    expA.resize(total);
    expNegA.resize(total);
    for (std::size_t j = 0; j < total; ++j) {
      expA[j] = std::exp(A[j]);
      expNegA[j] = std::exp(-A[j]);
    }
  }

  auto interp = [&](const std::vector<double>& psi, double s) -> double {
    double pos = (s - pad_t0) / hs;
    if (pos <= 0.0) return psi.front();
    auto j = static_cast<std::size_t>(pos);
    if (j >= total - 1) return psi.back();
    double th = pos - static_cast<double>(j);
    return psi[j] + th * (psi[j + 1] - psi[j]);
  };

  // Integrand of the operator at grid point l for the current iterate.
  std::vector<double> G(total), E(total), P(total), raw(total);
  auto sweep_G = [&](const std::vector<double>& psi) {
    par::parallel_for(
        static_cast<std::int64_t>(total),
        [&](std::int64_t ll) {
          auto l = static_cast<std::size_t>(ll);
          double s = t_at(l);
          double g = 0.0;
          for (std::size_t i = 0; i < nb; ++i) {
            double u = std::max(0.0, interp(psi, s - tauv[i][l]));
            g += bv[i][l] * flux(spec.m, spec.n, u);
          }
          if (harvesting) {
            double u = std::max(0.0, interp(psi, s - sigv[l]));
            g -= cv[l] * harvest_shape_eval(spec.harvest.shape, u);
          }
          G[l] = g;
        },
        par::enabled());
  };

  // raw[j] = trapezoid of e^{A(s)-A(t_j)} G(s) over [t_j - T, t_j] clamped at
  // the grid start. Exponential growth of e^{A} keeps the prefix-sum
  // differences well conditioned: the tail of the prefix is e^{-a_minus T}
  // of the window term.
  auto sweep_apply = [&]() {
    if (fast_exp) {
      for (std::size_t l = 0; l < total; ++l) E[l] = expA[l] * G[l];
      P[0] = E[0];
      for (std::size_t l = 1; l < total; ++l) P[l] = P[l - 1] + E[l];
      par::parallel_for(
          static_cast<std::int64_t>(total),
          [&](std::int64_t jj) {
            auto j = static_cast<std::size_t>(jj);
            std::size_t lo = j > k_trunc ? j - k_trunc : 0;
            if (j == lo) {
              raw[j] = 0.0;
              return;
            }
            double S = P[j] - (lo > 0 ? P[lo - 1] : 0.0) - 0.5 * E[lo] -
                       0.5 * E[j];
            raw[j] = expNegA[j] * S * hs;
          },
          par::enabled());
    } else {
      par::parallel_for(
          static_cast<std::int64_t>(total),
          [&](std::int64_t jj) {
            auto j = static_cast<std::size_t>(jj);
            std::size_t lo = j > k_trunc ? j - k_trunc : 0;
            if (j == lo) {
              raw[j] = 0.0;
              return;
            }
            double s = 0.0;
            for (std::size_t l = lo; l <= j; ++l) {
              double w = (l == lo || l == j) ? 0.5 : 1.0;
              s += w * std::exp(A[l] - A[j]) * G[l];
            }
            raw[j] = s * hs;
          },
          par::enabled());
    }
  };

  PapSolution sol;
  sol.w0 = w0;
  sol.w1 = w1;
  sol.grid_step = hs;
  sol.T_trunc = T;
  sol.tail_bound = tail_bound_at(spec, T);

  const double k = range.k, M = range.M;
  std::vector<double> psi(total, 0.5 * (k + M));
  double prev_diff = -1.0;
  for (int it = 0; it < opt.max_iter; ++it) {
    sweep_G(psi);
    sweep_apply();
    double wmin = raw[pad], wmax = raw[pad];
    double diff = 0.0;
    for (std::size_t j = 0; j < total; ++j) {
      if (j >= pad) {
        wmin = std::min(wmin, raw[j]);
        wmax = std::max(wmax, raw[j]);
      }
      double next = std::min(M, std::max(k, raw[j]));  // box projection
      diff = std::max(diff, std::fabs(next - psi[j]));
      psi[j] = next;
    }
    sol.iterate_min.push_back(wmin);
    sol.iterate_max.push_back(wmax);
    if (prev_diff > 0.0) sol.contraction_ratios.push_back(diff / prev_diff);
    prev_diff = diff;
    sol.iterations = it + 1;
    if (diff <= opt.tol) {
      sol.converged = true;
      break;
    }
  }

  // One unprojected application for the fixed-point residual on the window.
  sweep_G(psi);
  sweep_apply();
  for (std::size_t j = pad; j < total; ++j)
    sol.residual_fixed_point =
        std::max(sol.residual_fixed_point, std::fabs(psi[j] - raw[j]));

  // ODE defect: central differences of the iterate against the model rhs.
  std::vector<double> dv(nb);
  for (std::size_t j = std::max<std::size_t>(pad, 1); j + 1 < total; ++j) {
    double t = t_at(j);
    double deriv = (psi[j + 1] - psi[j - 1]) / (2.0 * hs);
    for (std::size_t i = 0; i < nb; ++i)
      dv[i] = std::max(0.0, interp(psi, t - tauv[i][j]));
    double hd = harvesting ? std::max(0.0, interp(psi, t - sigv[j])) : psi[j];
    double f = rhs(spec, t, psi[j], dv, hd);
    sol.residual_ode = std::max(sol.residual_ode, std::fabs(deriv - f));
  }

  // Second-order error model for the quadrature/interpolation defect scale.
  double a_plus = spec.a.bounds().hi;
  sol.quad_error_estimate =
      hs * hs * (1.0 + a_plus) *
      (a_plus * M + rep.constants.sum_b_plus + global_harvest_sup(spec));

  sol.window.t0 = w0;
  sol.window.step = hs;
  sol.window.values.assign(psi.begin() + static_cast<std::ptrdiff_t>(pad),
                           psi.end());
  return sol;
}

double crosscheck_forward(const ModelSpec& spec, const PapSolution& sol,
                          double h, double horizon) {
  const double r = max_delay(spec);
  const double t0 = sol.w0 + r;
  double t_end = sol.w1;
  if (horizon > 0.0) t_end = std::min(t_end, t0 + horizon);
  if (!(t_end > t0))
    throw std::invalid_argument("crosscheck_forward: window shorter than the delay");
  Trajectory traj = integrate(spec, HistoryFn::grid(sol.window), t0, t_end, h);
  if (traj.failed)
    throw std::runtime_error("crosscheck_forward: integration failed: " +
                             traj.failure);
  double sup = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    sup = std::max(sup, std::fabs(traj.values[i] - sol.window(traj.times[i])));
  return sup;
}

}  // namespace hemopap
