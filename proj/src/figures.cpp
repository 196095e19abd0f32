#include "gerstner/figures.hpp"

#include "gerstner/analysis.hpp"
#include "gerstner/errors.hpp"
#include "gerstner/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace gerstner {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

} // namespace

std::vector<FigurePanel> figure_panels(int which, const PhysicalConstants& constants) {
  const double g = constants.g;
  const double sg = std::sqrt(g);
  const double qg = std::sqrt(sg);
  std::vector<FigurePanel> panels;

  if (which == 1) {
    PhysicalConstants pc = constants;
    pc.omega = 0.0;
    const struct {
      const char* label;
      double U;
    } currents[] = {{"U = -g", -g},       {"U = -sqrt(g)", -sg}, {"U = -g^(1/4)", -qg},
                    {"U = 0", 0.0},       {"U = g^(1/4)", qg},   {"U = sqrt(g)", sg},
                    {"U = g", g}};
    int index = 1;
    for (const auto& c : currents) {
      panels.push_back({1, index++, c.label, resolve_classical(pc, 1.0, +1, c.U, 0.0)});
    }
    return panels;
  }

  if (which == 2) {
    const double w = constants.omega;
    const struct {
      const char* label;
      double m;
    } values[] = {
        {"m = -9w - sqrt(g)", -9.0 * w - sg},
        {"m = -2w - sqrt(4w^2 + g)", -2.0 * w - std::sqrt(4.0 * w * w + g)},
        {"m = -3/2 w - sqrt(w^2 + g)", -1.5 * w - std::sqrt(w * w + g)},
        {"m = -w - sqrt(w^2 + g)", -w - std::sqrt(w * w + g)},
        {"m = -w/2 - sqrt(w^2 + g)", -0.5 * w - std::sqrt(w * w + g)},
        {"m = -sqrt(g)", -sg},
        {"m = -w - sqrt(g)", -w - sg},
        {"m = 0", 0.0},
        {"m = -3w + sqrt(4w^2 + g)", -3.0 * w + std::sqrt(4.0 * w * w + g)},
        {"m = -2w + sqrt(4w^2 + g)", -2.0 * w + std::sqrt(4.0 * w * w + g)},
        {"m = -3/2 w + sqrt((3w/2)^2 + g)", -1.5 * w + std::sqrt(2.25 * w * w + g)},
        {"m = -w + sqrt(w^2 + g)", -w + std::sqrt(w * w + g)},
        {"m = -w/2 + sqrt((w/2)^2 + g)", -0.5 * w + std::sqrt(0.25 * w * w + g)},
        {"m = sqrt(g)", sg},
        {"m = w + sqrt(w^2 + g)", w + std::sqrt(w * w + g)},
    };
    int index = 1;
    for (const auto& v : values) {
      panels.push_back(
          {2, index++, v.label, resolve_geophysical_from_m(constants, 1.0, v.m, 0.0)});
    }
    return panels;
  }

  throw DomainError("figure must be 1 or 2");
}

std::vector<PanelCurve> panel_curves(const FigurePanel& panel, std::size_t samples) {
  const WaveParameters& p = panel.params;
  const double duration = p.m != 0.0
                              ? 2.0 * orbit_period(p)
                              : 2.0 * (2.0 * std::numbers::pi / p.k) / std::abs(p.c);
  std::vector<PanelCurve> curves;
  for (double b : kPanelDepths) {
    PanelCurve curve;
    curve.b = b;
    for (const TrajectorySample& s :
         sample_trajectory(p, {0.0, b}, 0.0, duration, std::max<std::size_t>(samples, 2))) {
      curve.points.push_back({s.state.x, s.state.z});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::string render_panel_svg(const FigurePanel& panel, std::span<const PanelCurve> curves) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double z_lo = x_lo;
  double z_hi = -x_lo;
  for (const PanelCurve& c : curves) {
    for (const Position& p : c.points) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      z_lo = std::min(z_lo, p.z);
      z_hi = std::max(z_hi, p.z);
    }
  }
  const double pad = 0.05 * std::max({x_hi - x_lo, z_hi - z_lo, 1e-12});
  x_lo -= pad;
  x_hi += pad;
  z_lo -= pad;
  z_hi += pad;

  // Equal aspect: the data box is widened vertically when it would be
  // thinner than the minimum plot height.
  const double width = 640.0;
  const double margin = 24.0;
  const double scale = width / (x_hi - x_lo);
  double height = (z_hi - z_lo) * scale;
  const double min_height = 96.0;
  if (height < min_height) {
    const double extra = (min_height / scale - (z_hi - z_lo)) / 2.0;
    z_lo -= extra;
    z_hi += extra;
    height = min_height;
  }

  auto num = [](double v) { return io::format_double(v); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width + 2 * margin)
      << "\" height=\"" << num(height + 2 * margin + 20) << "\">\n";
  svg << "  <title>Figure " << panel.figure << " panel (" << panel.index << ") "
      << panel.label << "</title>\n";
  svg << "  <text x=\"" << num(margin) << "\" y=\"16\" font-family=\"sans-serif\" "
         "font-size=\"13\">(" << panel.index << ") " << panel.label << "</text>\n";
  svg << "  <rect class=\"frame\" x=\"" << num(margin) << "\" y=\"" << num(margin)
      << "\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg << "  <g class=\"data\" data-x-min=\"" << num(x_lo) << "\" data-x-max=\"" << num(x_hi)
      << "\" data-z-min=\"" << num(z_lo) << "\" data-z-max=\"" << num(z_hi)
      << "\" transform=\"matrix(" << num(scale) << " 0 0 " << num(-scale) << ' '
      << num(margin - scale * x_lo) << ' ' << num(margin + scale * z_hi) << ")\">\n";
  std::size_t color = 0;
  for (const PanelCurve& c : curves) {
    svg << "    <polyline class=\"path\" data-b=\"" << num(c.b) << "\" fill=\"none\" stroke=\""
        << kPalette[color++ % std::size(kPalette)]
        << "\" stroke-width=\"1.2\" vector-effect=\"non-scaling-stroke\" points=\"";
    bool first = true;
    for (const Position& p : c.points) {
      if (!first) svg << ' ';
      first = false;
      svg << num(p.x) << ',' << num(p.z);
    }
    svg << "\"/>\n";
  }
  svg << "  </g>\n</svg>\n";
  return svg.str();
}

std::string panel_filename(const FigurePanel& panel) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "figure%d_panel%02d.svg", panel.figure, panel.index);
  return buf;
}

} // namespace gerstner
