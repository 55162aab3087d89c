#pragma once

// Output helpers for the command-line driver: CSV exports, a small
// self-contained SVG line plotter, and plain-text `key = value` report
// renderers. All writers emit LF line endings and format numbers with
// fmt_sig12 so repeated runs produce byte-identical files.

#include <optional>
#include <string>
#include <vector>

#include "hemopap/analysis.hpp"
#include "hemopap/dde.hpp"
#include "hemopap/hypotheses.hpp"
#include "hemopap/picard.hpp"

namespace hemopap {

void write_text_file(const std::string& path, const std::string& content);

// Columns "t,x", one row per integration node.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

// Columns "t,<value_header>", one row per grid node.
void write_grid_csv(const std::string& path, const GridFn& grid,
                    const std::string& value_header = "x_star");

struct PlotSeries {
  std::string label;
  std::vector<double> t, x;
};

// Minimal standalone SVG: one polyline per series, axes with a few ticks,
// legend from the labels. Long series are thinned to keep files small.
void write_svg_lines(const std::string& path,
                     const std::vector<PlotSeries>& series,
                     const std::string& title);

std::string render_check_report(const HypothesisReport& rep,
                                const std::vector<RateCertificate>& rates);
std::string render_permanence_report(const PermanenceReport& rep);
std::string render_stability_report(const StabilityCertificate& cert);
std::string render_extinction_report(const ExtinctionResult& res);
std::string render_pap_report(const PapSolution& sol,
                              std::optional<double> crosscheck_diff);

}  // namespace hemopap
