// Command-line driver: condition checking, forward simulation, the
// fixed-point window solver, two-trajectory stability runs, extinction runs,
// and the bundled two-start comparison. Exit codes: 0 success, 1 a checked
// condition failed, 2 parse or runtime failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hemopap/analysis.hpp"
#include "hemopap/dde.hpp"
#include "hemopap/errors.hpp"
#include "hemopap/hypotheses.hpp"
#include "hemopap/io.hpp"
#include "hemopap/picard.hpp"
#include "hemopap/scenario.hpp"

namespace {

using namespace hemopap;

std::string joined(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw std::runtime_error(dir + ": cannot create output directory");
}

PlotSeries to_series(const Trajectory& traj, std::string label) {
  return PlotSeries{std::move(label), traj.times, traj.values};
}

int cmd_check(const Scenario& sc, const std::string& out_dir) {
  HypothesisReport rep = check_all(sc.model, sc.range, sc.overrides);
  std::vector<RateCertificate> rates;
  if (rep.all_pass) {
    rates.push_back(rate_bisect(RateKind::ContractionGamma, sc.model, sc.range,
                                sc.overrides));
    rates.push_back(rate_bisect(RateKind::StabilityDelta, sc.model, sc.range,
                                sc.overrides));
  }
  if (rep.extinction_pass)
    rates.push_back(
        rate_bisect(RateKind::ExtinctionG, sc.model, sc.range, sc.overrides));
  std::string report = render_check_report(rep, rates);
  write_text_file(joined(out_dir, "check_report.txt"), report);
  std::cout << report;
  return rep.all_pass ? 0 : 1;
}

int cmd_simulate(const Scenario& sc, const std::string& out_dir, double phi) {
  Trajectory traj = integrate(sc.model, HistoryFn::constant(phi), 0.0,
                              sc.numerics.horizon, sc.numerics.h);
  write_trajectory_csv(joined(out_dir, "trajectory.csv"), traj);
  if (traj.failed) {
    std::cerr << "integration failed: " << traj.failure << "\n";
    return 2;
  }
  PermanenceReport rep =
      monitor(traj, sc.range.k, sc.range.M, 0.2 * sc.numerics.horizon);
  std::string report = render_permanence_report(rep);
  write_text_file(joined(out_dir, "permanence_report.txt"), report);
  write_svg_lines(joined(out_dir, "trajectory.svg"), {to_series(traj, "x")},
                  "simulated trajectory");
  std::cout << report;
  return 0;
}

int cmd_solve_pap(const Scenario& sc, const std::string& out_dir) {
  PicardOptions opt;
  opt.grid_step = sc.numerics.grid_step;
  opt.T_trunc = sc.numerics.T_trunc;
  opt.tol = sc.numerics.tol;
  PapSolution sol =
      picard_solve(sc.model, sc.range, 0.0, sc.numerics.window, opt,
                   sc.overrides);
  write_grid_csv(joined(out_dir, "pap_solution.csv"), sol.window);
  std::optional<double> crosscheck;
  if (sol.converged)
    crosscheck = crosscheck_forward(sc.model, sol, sc.numerics.h);
  std::string report = render_pap_report(sol, crosscheck);
  write_text_file(joined(out_dir, "pap_report.txt"), report);
  std::cout << report;
  if (!sol.converged) {
    std::cerr << "fixed-point iteration did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_stability(const Scenario& sc, const std::string& out_dir, double phi_a,
                  double phi_b) {
  AttractorResult res = attractor_experiment(
      sc.model, sc.range, HistoryFn::constant(phi_a),
      HistoryFn::constant(phi_b), sc.numerics.horizon, sc.numerics.h,
      sc.overrides);
  write_trajectory_csv(joined(out_dir, "stability_a.csv"), res.a);
  write_trajectory_csv(joined(out_dir, "stability_b.csv"), res.b);
  write_svg_lines(joined(out_dir, "stability.svg"),
                  {to_series(res.a, "start A"), to_series(res.b, "start B")},
                  "two-start comparison");
  std::string report = render_stability_report(res.cert);
  write_text_file(joined(out_dir, "stability_report.txt"), report);
  std::cout << report;
  if (res.cert.advisory) {
    std::cerr << "conditions failed: certificate is advisory only\n";
    return 1;
  }
  return res.cert.envelope_pass ? 0 : 1;
}

int cmd_extinction(const Scenario& sc, const std::string& out_dir,
                   double phi) {
  ExtinctionResult res = extinction_experiment(
      sc.model, HistoryFn::constant(phi), sc.numerics.horizon, sc.numerics.h);
  write_trajectory_csv(joined(out_dir, "extinction.csv"), res.traj);
  std::string report = render_extinction_report(res);
  write_text_file(joined(out_dir, "extinction_report.txt"), report);
  std::cout << report;
  return res.envelope_pass ? 0 : 1;
}

int cmd_fig2(const std::string& out_dir, double horizon, double h) {
  Fig2Result res = fig2_scenario(horizon, h);
  write_trajectory_csv(joined(out_dir, "fig2_low.csv"), res.low);
  write_trajectory_csv(joined(out_dir, "fig2_high.csv"), res.high);
  write_svg_lines(joined(out_dir, "fig2.svg"),
                  {to_series(res.low, "start 0.1"),
                   to_series(res.high, "start 1.0")},
                  "two-start comparison, bundled scenario");
  std::cout << "final_window_diff = " << res.final_window_diff << "\n";
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{
      "hemopap: blood-cell production model with delayed harvesting "
      "(permanence checks, forward runs, fixed-point window solver)"};
  app.require_subcommand(1);

  std::string scenario_arg, out_dir = ".";
  double phi = -1.0, phi_a = -1.0, phi_b = -1.0;
  double horizon = 200.0, step = 0.01;

  auto add_common = [&](CLI::App* sub, bool with_scenario = true) {
    if (with_scenario)
      sub->add_option("scenario", scenario_arg,
                      "scenario file, or the name of a bundled scenario "
                      "(\"example6\")")
          ->required();
    sub->add_option("--out-dir", out_dir, "directory for output files");
  };

  CLI::App* check = app.add_subcommand(
      "check", "evaluate the standing conditions and certified rates");
  add_common(check);

  CLI::App* simulate =
      app.add_subcommand("simulate", "integrate forward and monitor the box");
  add_common(simulate);
  simulate->add_option("--phi", phi,
                       "constant starting history (default: box midpoint)");

  CLI::App* solve =
      app.add_subcommand("solve-pap", "fixed-point iteration for the "
                                      "persistent oscillation window");
  add_common(solve);

  CLI::App* stability = app.add_subcommand(
      "stability", "two starting histories, one attractor: envelope check");
  add_common(stability);
  stability->add_option("--phi-a", phi_a,
                        "first constant history (default: box lower edge)");
  stability->add_option("--phi-b", phi_b,
                        "second constant history (default: box upper edge)");

  CLI::App* extinction = app.add_subcommand(
      "extinction", "decay-dominated run with a certified envelope");
  add_common(extinction);
  extinction->add_option("--phi", phi,
                         "constant starting history (default: 1)");

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "bundled scenario from two starting levels, with overlay plot");
  add_common(fig2, /*with_scenario=*/false);
  fig2->add_option("--horizon", horizon, "integration horizon");
  fig2->add_option("--step", step, "integration step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ensure_dir(out_dir);

  if (fig2->parsed()) return cmd_fig2(out_dir, horizon, step);

  Scenario sc = load_scenario(scenario_arg);
  if (check->parsed()) return cmd_check(sc, out_dir);
  if (simulate->parsed()) {
    double p = phi > 0.0 ? phi : 0.5 * (sc.range.k + sc.range.M);
    return cmd_simulate(sc, out_dir, p);
  }
  if (solve->parsed()) return cmd_solve_pap(sc, out_dir);
  if (stability->parsed()) {
    double pa = phi_a > 0.0 ? phi_a : sc.range.k;
    double pb = phi_b > 0.0 ? phi_b : sc.range.M;
    return cmd_stability(sc, out_dir, pa, pb);
  }
  if (extinction->parsed()) {
    double p = phi > 0.0 ? phi : 1.0;
    return cmd_extinction(sc, out_dir, p);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const hemopap::ConditionError& e) {
    std::cerr << "condition failure: " << e.what() << "\n";
    return 1;
  } catch (const hemopap::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
