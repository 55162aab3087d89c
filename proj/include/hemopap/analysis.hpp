#pragma once

// Numerical experiments around the certified rates: pairwise exponential
// attraction inside the box, extinction under decay dominance, and the
// two-start convergence figure for the built-in scenario.

#include <vector>

#include "hemopap/dde.hpp"
#include "hemopap/hypotheses.hpp"

namespace hemopap {

struct StabilityCertificate {
  double lambda_bound = 0.0;  // certified rate from Delta-bisection
  double M1 = 0.0;            // envelope amplitude M + sup history gap
  double initial_gap = 0.0;   // sup |phiA - phiB| on [t0 - r, t0]
  bool envelope_pass = false; // |xA - xB| <= M1 e^{-lambda (t - t0)} at nodes
  double max_envelope_excess = 0.0;
  double fitted_rate = 0.0;   // least-squares decay of log |xA - xB|
  bool has_fit = false;       // enough gap samples above the noise floor
  bool advisory = false;      // hypotheses failed: no certified envelope
};

struct AttractorResult {
  StabilityCertificate cert;
  Trajectory a, b;
};

// Integrates both histories over [0, horizon]. When H1-H4 fail the
// experiment still runs but the certificate is advisory and no envelope is
// certified. Throws on integration failure.
AttractorResult attractor_experiment(const ModelSpec& spec,
                                     const RangeParams& range,
                                     const HistoryFn& phi_a,
                                     const HistoryFn& phi_b, double horizon,
                                     double h, const Overrides& ovr = {});

struct ExtinctionResult {
  double lambda_g = 0.0;   // certified rate from G-bisection
  double envelope_q = 0.0; // sup of the history: x(t) <= Q e^{-lambda_g t}
  bool envelope_pass = false;
  double max_envelope_excess = 0.0;
  double final_value = 0.0;
  double tail_max = 0.0;   // max over the last fifth of the horizon
  Trajectory traj;
};

// Requires inf(a) > sum sup(b_i); throws ConditionError otherwise.
ExtinctionResult extinction_experiment(const ModelSpec& spec,
                                       const HistoryFn& phi, double horizon,
                                       double h);

struct Fig2Result {
  Trajectory low, high;          // starts 0.1 and 1.0
  double final_window_diff = 0.0;  // sup |low - high| over the last fifth
};

// Two sub-box starts of the built-in scenario; both runs are exported by the
// CLI together with an overlay plot.
Fig2Result fig2_scenario(double horizon, double h);

// In-box starting histories used by the experiments and tests: the box
// edges, the midpoint, and a trigonometric modulation around the midpoint.
std::vector<HistoryFn> history_bank(const RangeParams& range);

}  // namespace hemopap
