#include "hemopap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hemopap/numfmt.hpp"

namespace hemopap {

namespace {

const char* bool_str(bool v) { return v ? "true" : "false"; }

void kv(std::ostream& os, const char* key, double v) {
  os << key << " = " << fmt_sig12(v) << "\n";
}

void kv(std::ostream& os, const char* key, bool v) {
  os << key << " = " << bool_str(v) << "\n";
}

void kv(std::ostream& os, const char* key, int v) {
  os << key << " = " << v << "\n";
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

const char* kind_key(RateKind kind) {
  switch (kind) {
    case RateKind::ExtinctionG:
      return "extinction_rate";
    case RateKind::ContractionGamma:
      return "contraction_rate";
    case RateKind::StabilityDelta:
      return "stability_rate";
  }
  return "rate";
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ostringstream os;
  os << "t,x\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    os << fmt_sig12(traj.times[i]) << "," << fmt_sig12(traj.values[i]) << "\n";
  write_text_file(path, os.str());
}

void write_grid_csv(const std::string& path, const GridFn& grid,
                    const std::string& value_header) {
  std::ostringstream os;
  os << "t," << value_header << "\n";
  for (std::size_t i = 0; i < grid.values.size(); ++i)
    os << fmt_sig12(grid.t0 + static_cast<double>(i) * grid.step) << ","
       << fmt_sig12(grid.values[i]) << "\n";
  write_text_file(path, os.str());
}

void write_svg_lines(const std::string& path,
                     const std::vector<PlotSeries>& series,
                     const std::string& title) {
  constexpr double kW = 800.0, kH = 500.0;
  constexpr double kLeft = 60.0, kRight = 20.0, kTop = 34.0, kBottom = 42.0;
  const double iw = kW - kLeft - kRight, ih = kH - kTop - kBottom;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  constexpr std::size_t kMaxPoints = 2000;

  double t_lo = 0.0, t_hi = 1.0, x_lo = 0.0, x_hi = 1.0;
  bool any = false;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      if (!any) {
        t_lo = t_hi = s.t[i];
        x_lo = x_hi = s.x[i];
        any = true;
      } else {
        t_lo = std::min(t_lo, s.t[i]);
        t_hi = std::max(t_hi, s.t[i]);
        x_lo = std::min(x_lo, s.x[i]);
        x_hi = std::max(x_hi, s.x[i]);
      }
    }
  }
  double x_pad = 0.05 * std::max(x_hi - x_lo, 1e-12);
  x_lo -= x_pad;
  x_hi += x_pad;
  double t_span = std::max(t_hi - t_lo, 1e-12);
  double x_span = x_hi - x_lo;

  auto px = [&](double t) { return kLeft + (t - t_lo) / t_span * iw; };
  auto py = [&](double x) { return kTop + (x_hi - x) / x_span * ih; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
        "height=\"500\" viewBox=\"0 0 800 500\">\n";
  os << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt2(kLeft) << "\" y=\"20\" font-family=\"sans-serif\" "
        "font-size=\"14\">"
     << title << "</text>\n";

  // axes
  os << "<line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop) << "\" x2=\""
     << fmt2(kLeft) << "\" y2=\"" << fmt2(kTop + ih)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop + ih)
     << "\" x2=\"" << fmt2(kLeft + iw) << "\" y2=\"" << fmt2(kTop + ih)
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double ft = static_cast<double>(i) / 5.0;
    double tx = kLeft + ft * iw;
    double ty = kTop + ih - ft * ih;
    os << "<line x1=\"" << fmt2(tx) << "\" y1=\"" << fmt2(kTop + ih)
       << "\" x2=\"" << fmt2(tx) << "\" y2=\"" << fmt2(kTop + ih + 4)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt2(tx) << "\" y=\"" << fmt2(kTop + ih + 18)
       << "\" font-family=\"sans-serif\" font-size=\"11\" "
          "text-anchor=\"middle\">"
       << fmt_tick(t_lo + ft * t_span) << "</text>\n";
    os << "<line x1=\"" << fmt2(kLeft - 4) << "\" y1=\"" << fmt2(ty)
       << "\" x2=\"" << fmt2(kLeft) << "\" y2=\"" << fmt2(ty)
       << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt2(kLeft - 8) << "\" y=\"" << fmt2(ty + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" "
          "text-anchor=\"end\">"
       << fmt_tick(x_lo + ft * x_span) << "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kColors[si % (sizeof kColors / sizeof *kColors)];
    if (s.t.size() >= 2) {
      std::size_t stride = (s.t.size() + kMaxPoints - 1) / kMaxPoints;
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.t.size(); i += stride)
        os << fmt2(px(s.t[i])) << "," << fmt2(py(s.x[i])) << " ";
      os << fmt2(px(s.t.back())) << "," << fmt2(py(s.x.back()));
      os << "\"/>\n";
    }
    double ly = kTop + 14.0 + 16.0 * static_cast<double>(si);
    os << "<rect x=\"" << fmt2(kLeft + iw - 130) << "\" y=\"" << fmt2(ly - 9)
       << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << fmt2(kLeft + iw - 115) << "\" y=\"" << fmt2(ly)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
  write_text_file(path, os.str());
}

std::string render_check_report(const HypothesisReport& rep,
                                const std::vector<RateCertificate>& rates) {
  std::ostringstream os;
  kv(os, "h1_pass", rep.h1_pass);
  if (rep.h1_argmax) kv(os, "h1_flux_argmax", *rep.h1_argmax);
  if (rep.h1_k_tilde) kv(os, "h1_companion_point", *rep.h1_k_tilde);
  kv(os, "h2_value", rep.h2_value);
  kv(os, "h2_pass", rep.h2_pass);
  kv(os, "h3_value", rep.h3_value);
  kv(os, "h3_pass", rep.h3_pass);
  kv(os, "h4_value", rep.h4_value);
  kv(os, "h4_pass", rep.h4_pass);
  kv(os, "all_pass", rep.all_pass);
  kv(os, "extinction_condition", rep.extinction_pass);
  const DerivedConstants& c = rep.constants;
  kv(os, "a_minus", c.a_minus);
  kv(os, "a_plus", c.a_plus);
  for (std::size_t i = 0; i < c.b_minus.size(); ++i) {
    os << "b_minus[" << i + 1 << "] = " << fmt_sig12(c.b_minus[i]) << "\n";
    os << "b_plus[" << i + 1 << "] = " << fmt_sig12(c.b_plus[i]) << "\n";
  }
  kv(os, "sum_b_minus", c.sum_b_minus);
  kv(os, "sum_b_plus", c.sum_b_plus);
  kv(os, "H_plus_recomputed", c.H_plus_recomputed);
  kv(os, "H_minus_recomputed", c.H_minus_recomputed);
  kv(os, "L_recomputed", c.L_recomputed);
  kv(os, "H_plus", c.H_plus);
  kv(os, "H_minus", c.H_minus);
  kv(os, "L", c.L);
  kv(os, "max_delay", c.r);
  kv(os, "flux_slope_bound", c.C);
  for (const RateCertificate& rc : rates) {
    const char* key = kind_key(rc.kind);
    os << key << " = " << fmt_sig12(rc.rate) << "\n";
    os << key << "_value_at_zero = " << fmt_sig12(rc.value_at_zero) << "\n";
  }
  return os.str();
}

std::string render_permanence_report(const PermanenceReport& rep) {
  std::ostringstream os;
  kv(os, "monitor_from", rep.t_from);
  kv(os, "monitor_to", rep.t_to);
  kv(os, "min_x", rep.min_x);
  kv(os, "max_x", rep.max_x);
  kv(os, "lower_pass", rep.lower_pass);
  kv(os, "upper_pass", rep.upper_pass);
  kv(os, "permanent", rep.permanent);
  kv(os, "apriori_bound", rep.apriori_bound);
  kv(os, "full_max", rep.full_max);
  kv(os, "apriori_pass", rep.apriori_pass);
  return os.str();
}

std::string render_stability_report(const StabilityCertificate& cert) {
  std::ostringstream os;
  kv(os, "advisory", cert.advisory);
  kv(os, "initial_gap", cert.initial_gap);
  if (!cert.advisory) {
    kv(os, "stability_rate", cert.lambda_bound);
    kv(os, "envelope_amplitude", cert.M1);
    kv(os, "envelope_pass", cert.envelope_pass);
    kv(os, "max_envelope_excess", cert.max_envelope_excess);
  }
  if (cert.has_fit) kv(os, "fitted_rate", cert.fitted_rate);
  return os.str();
}

std::string render_extinction_report(const ExtinctionResult& res) {
  std::ostringstream os;
  kv(os, "extinction_rate", res.lambda_g);
  kv(os, "envelope_amplitude", res.envelope_q);
  kv(os, "envelope_pass", res.envelope_pass);
  kv(os, "max_envelope_excess", res.max_envelope_excess);
  kv(os, "final_value", res.final_value);
  kv(os, "tail_max", res.tail_max);
  return os.str();
}

std::string render_pap_report(const PapSolution& sol,
                              std::optional<double> crosscheck_diff) {
  std::ostringstream os;
  kv(os, "window_from", sol.w0);
  kv(os, "window_to", sol.w1);
  kv(os, "grid_step", sol.grid_step);
  kv(os, "truncation_horizon", sol.T_trunc);
  kv(os, "iterations", sol.iterations);
  kv(os, "converged", sol.converged);
  if (!sol.contraction_ratios.empty())
    kv(os, "last_contraction_ratio", sol.contraction_ratios.back());
  if (!sol.iterate_min.empty()) {
    kv(os, "iterate_min", sol.iterate_min.back());
    kv(os, "iterate_max", sol.iterate_max.back());
  }
  kv(os, "residual_fixed_point", sol.residual_fixed_point);
  kv(os, "residual_ode", sol.residual_ode);
  kv(os, "tail_bound", sol.tail_bound);
  kv(os, "quad_error_estimate", sol.quad_error_estimate);
  if (crosscheck_diff) kv(os, "crosscheck_diff", *crosscheck_diff);
  return os.str();
}

}  // namespace hemopap
