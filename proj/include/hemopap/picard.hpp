#pragma once

// Constructs the distinguished bounded solution on a window [w0, w1] as the
// fixed point of the integral operator
//
//   (Gamma psi)(t) = int_{-infty}^t e^{-int_s^t a} [ sum_i b_i(s)
//                     flux(psi(s - tau_i(s))) - H(s, psi(s - sigma(s))) ] ds,
//
// truncated to depth T_trunc (tail bounded by (sum sup b_i + sup H)
// e^{-inf(a) T_trunc} / inf(a)) and discretized with trapezoid quadrature and
// linear interpolation on a uniform grid. The grid is padded on the left by
// T_trunc + r so every window point sees a full integration depth. Iterates
// are projected into [k, M] after each sweep: to the left of the pad the
// truncated operator drifts below the box, where the contraction estimate no
// longer applies and a spurious extinct fixed point attracts; the projection
// keeps the iteration in the regime the contraction certificate covers.

#include <functional>
#include <vector>

#include "hemopap/dde.hpp"
#include "hemopap/hypotheses.hpp"
#include "hemopap/model.hpp"

namespace hemopap {

struct GammaResult {
  double value = 0.0;
  double tail_bound = 0.0;  // rigorous truncation error bound
};

// One evaluation of the truncated operator at time t, with its own quadrature
// step. psi must be defined on [t - T_trunc - r(spec), t].
GammaResult gamma_apply(const ModelSpec& spec,
                        const std::function<double(double)>& psi, double t,
                        double T_trunc, double quad_step);

struct PicardOptions {
  double grid_step = 0.05;
  double T_trunc = -1.0;  // <= 0: derived so the tail bound is < tol/10
  double tol = 1e-6;      // sup-grid stopping threshold
  int max_iter = 200;
};

struct PapSolution {
  double w0 = 0.0, w1 = 0.0;
  double grid_step = 0.0, T_trunc = 0.0;
  GridFn window;  // converged values on [w0, w1]
  int iterations = 0;
  bool converged = false;
  std::vector<double> contraction_ratios;  // successive sup-difference ratios
  std::vector<double> iterate_min, iterate_max;  // window extrema before projection
  double residual_fixed_point = 0.0;  // sup_window |psi - Gamma psi|
  double residual_ode = 0.0;          // sup central-difference defect
  double tail_bound = 0.0;
  double quad_error_estimate = 0.0;   // second-order discretization scale
};

// Throws ConditionError when check_all fails (the contraction is certified
// only under H1-H4). Non-convergence is reported via converged = false.
PapSolution picard_solve(const ModelSpec& spec, const RangeParams& range,
                         double w0, double w1, const PicardOptions& opt = {},
                         const Overrides& ovr = {});

// Integrates the model forward with phi = sol on [w0, w0 + r] and returns the
// sup difference against the solution grid over [w0 + r, min(w1, w0 + r +
// horizon)] (horizon <= 0: the whole window).
double crosscheck_forward(const ModelSpec& spec, const PapSolution& sol,
                          double h, double horizon = -1.0);

}  // namespace hemopap
