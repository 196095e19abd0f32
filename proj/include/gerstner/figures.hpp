#pragma once

#include "gerstner/kinematics.hpp"
#include "gerstner/params.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gerstner {

/// Depths of the plotted particles (a = 0) in every panel.
inline constexpr std::array<double, 5> kPanelDepths{0.0, -0.8, -1.5, -2.0, -2.5};

struct FigurePanel {
  int figure = 0; // 1: no rotation, current varies; 2: rotation, m varies
  int index = 0;  // 1-based panel number
  std::string label;
  WaveParameters params;
};

/// The seven classical panels (k = 1, m = sqrt(g), U from -g to g) or the
/// fifteen geophysical panels (k = 1, m from the standard list).
/// `constants` supplies g, rho, p0 and, for figure 2, omega.
std::vector<FigurePanel> figure_panels(int which,
                                       const PhysicalConstants& constants = {});

struct PanelCurve {
  double b = 0.0;
  std::vector<Position> points;
};

/// Path of the particle (0, b) for every panel depth over two orbits
/// (two wavelengths of travel when m = 0).
std::vector<PanelCurve> panel_curves(const FigurePanel& panel, std::size_t samples);

/// Standalone SVG: one polyline per curve, in data coordinates under an
/// equal-aspect transform, plus a frame and the panel label.
std::string render_panel_svg(const FigurePanel& panel,
                             std::span<const PanelCurve> curves);

/// "figure1_panel04.svg" style file name.
std::string panel_filename(const FigurePanel& panel);

} // namespace gerstner
