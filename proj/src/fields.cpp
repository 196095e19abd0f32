#include "gerstner/fields.hpp"

#include "gerstner/detail/flow_map.hpp"
#include "gerstner/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gerstner {

namespace {

using Ext = long double;
using ExtMap = detail::FlowMap<Ext>;

void require_label(const WaveParameters& p, double b) {
  if (!(b <= p.b0)) {
    throw DomainError("label depth b = " + std::to_string(b) +
                      " lies above the surface label b0 = " + std::to_string(p.b0));
  }
}

// P - P0 on the level b.
template <typename T>
T pressure_offset(const WaveParameters& p, T b) {
  const T k = p.k;
  const T m = p.m;
  const T omega = p.constants.omega;
  const T rho = p.constants.rho;
  const T g = p.constants.g;
  const T b0 = p.b0;
  const T wave = rho * m * (k * m + 2 * omega) / (2 * k);
  // e^{2kb} - e^{2kb0} without cancellation near the surface.
  const T levels = std::exp(2 * k * b0) * std::expm1(2 * k * (b - b0));
  const T static_part = 2 * omega * rho * (T(p.c) - m) - g * rho;
  return wave * levels + static_part * (b - b0);
}

// Fields at a point with the constant parts removed: u - U, w, P - P0.
struct Reduced {
  Ext du;
  Ext w;
  Ext dp;
};

Reduced reduced_state(const ExtMap& map, const WaveParameters& p, Ext t, Ext x,
                      Ext z) {
  const auto [a, b] = map.invert_map(t, x, z);
  const auto [du, w] = map.wave_velocity(t, a, b);
  return {du, w, pressure_offset<Ext>(p, b)};
}

struct Stencil {
  Reduced center;
  Ext u;  // full horizontal velocity at the center
  Ext du_t, du_x, du_z;
  Ext w_t, w_x, w_z;
  Ext p_x, p_z;
};

Stencil differentiate(const WaveParameters& p, double t, double X, double Z,
                      double h) {
  if (!(h > 0.0)) throw DomainError("differencing step h must be positive");
  const ExtMap map(p);
  const Ext ht = time_step(p, h);
  const Ext eh = h;
  const Ext et = t;
  const Ext ex = X;
  const Ext ez = Z;

  const Ext eta = map.surface(et, ex);
  if (ez > eta - 2 * eh) {
    throw DomainError("point (" + std::to_string(X) + ", " + std::to_string(Z) +
                      ") lacks the 2h clearance below the surface");
  }
  for (const auto& [ts, xs] : {std::pair{et + ht, ex}, std::pair{et - ht, ex},
                               std::pair{et, ex + eh}, std::pair{et, ex - eh}}) {
    if (!(ez < map.surface(ts, xs))) {
      throw DomainError("differencing stencil at (" + std::to_string(X) + ", " +
                        std::to_string(Z) + ") crosses the surface");
    }
  }

  Stencil s;
  s.center = reduced_state(map, p, et, ex, ez);
  s.u = Ext(p.U) + s.center.du;

  const Reduced tp = reduced_state(map, p, et + ht, ex, ez);
  const Reduced tm = reduced_state(map, p, et - ht, ex, ez);
  const Reduced xp = reduced_state(map, p, et, ex + eh, ez);
  const Reduced xm = reduced_state(map, p, et, ex - eh, ez);
  const Reduced zp = reduced_state(map, p, et, ex, ez + eh);
  const Reduced zm = reduced_state(map, p, et, ex, ez - eh);

  s.du_t = (tp.du - tm.du) / (2 * ht);
  s.w_t = (tp.w - tm.w) / (2 * ht);
  s.du_x = (xp.du - xm.du) / (2 * eh);
  s.w_x = (xp.w - xm.w) / (2 * eh);
  s.p_x = (xp.dp - xm.dp) / (2 * eh);
  s.du_z = (zp.du - zm.du) / (2 * eh);
  s.w_z = (zp.w - zm.w) / (2 * eh);
  s.p_z = (zp.dp - zm.dp) / (2 * eh);
  return s;
}

} // namespace

double pressure(const WaveParameters& params, double b) {
  require_label(params, b);
  return params.constants.p0 + pressure_offset<double>(params, b);
}

double pressure_gradient_b(const WaveParameters& params, double b) {
  require_label(params, b);
  const double k = params.k;
  const double m = params.m;
  const double omega = params.constants.omega;
  const double rho = params.constants.rho;
  return rho * m * (k * m + 2.0 * omega) * std::exp(2.0 * k * b) +
         2.0 * omega * rho * (params.c - m) - params.constants.g * rho;
}

double vorticity(const WaveParameters& params, double b) {
  require_label(params, b);
  if (params.m == 0.0) return 0.0;
  if (b == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    throw SingularityError("vorticity diverges on the level b = 0",
                           params.m > 0.0 ? -inf : inf);
  }
  const double two_kb = 2.0 * params.k * b;
  // -2 k m e^{2kb} / (1 - e^{2kb})
  return 2.0 * params.k * params.m * std::exp(two_kb) / std::expm1(two_kb);
}

EulerianSample eulerian_state(const WaveParameters& params, double t, double X,
                              double Z) {
  const detail::FlowMap<double> map(params);
  const double eta = map.surface(t, X);
  EulerianSample s{};
  s.x = X;
  s.z = Z;
  // rounding band of the surface profile
  const double amplitude = std::exp(params.k * params.b0) / params.k;
  const double band = 8.0 * std::numeric_limits<double>::epsilon() *
                      std::max({1.0, std::abs(params.b0) + amplitude, std::abs(eta)});
  if (Z > eta + band) {
    throw OutOfDomainError("point (" + std::to_string(X) + ", " +
                           std::to_string(Z) + ") lies above the surface");
  }
  if (Z >= eta - band) {
    s.label = {map.invert_x(t, X, params.b0), params.b0};
    s.on_surface = true;
  } else {
    const auto [a, b] = map.invert_map(t, X, Z);
    s.label = {a, b};
  }
  const auto [u, w] = map.velocity(t, s.label.a, s.label.b);
  s.u = u;
  s.w = w;
  s.p = s.on_surface ? params.constants.p0 : pressure(params, s.label.b);
  return s;
}

double time_step(const WaveParameters& params, double h) {
  const double speed = std::max({std::abs(params.c), std::abs(params.m), 1.0});
  return h / speed;
}

EulerResidual euler_residual(const WaveParameters& params, double t, double X,
                             double Z, double h) {
  const Stencil s = differentiate(params, t, X, Z, h);
  const Ext omega = params.constants.omega;
  const Ext rho = params.constants.rho;
  const Ext g = params.constants.g;
  const Ext u = s.u;
  const Ext w = s.center.w;

  const Ext rx = s.du_t + u * s.du_x + w * s.du_z + 2 * omega * w + s.p_x / rho;
  const Ext rz = s.w_t + u * s.w_x + w * s.w_z - 2 * omega * u + s.p_z / rho + g;
  const Ext div = s.du_x + s.w_z;
  return {static_cast<double>(std::abs(rx)), static_cast<double>(std::abs(rz)),
          static_cast<double>(std::abs(div))};
}

double vorticity_fd(const WaveParameters& params, double t, double X, double Z,
                    double h) {
  const Stencil s = differentiate(params, t, X, Z, h);
  return static_cast<double>(s.du_z - s.w_x);
}

BoundaryResiduals boundary_residuals(const WaveParameters& params, double t,
                                     std::span<const double> a_surface_samples) {
  const ExtMap map(params);
  const Ext b0 = params.b0;
  const Ext m = params.m;

  BoundaryResiduals out;
  out.dynamic_bc = std::abs(pressure(params, params.b0) - params.constants.p0);
  Ext worst = 0;
  for (double a : a_surface_samples) {
    const auto J = map.partials(t, a, b0);
    if (J.xa < Ext(1e-9)) {
      ++out.excluded_cusps;
      continue;
    }
    // relative to the surface, which the map carries at U + m
    const auto [du, w] = map.wave_velocity(t, a, b0);
    const Ext slope = J.za / J.xa;
    worst = std::max(worst, std::abs(w - (du - m) * slope));
    ++out.evaluated;
  }
  out.kinematic_bc = static_cast<double>(worst);
  return out;
}

PressureCheck lagrangian_pressure_check(const WaveParameters& params, double t,
                                        ParticleLabel label) {
  require_label(params, label.b);
  const detail::FlowMap<double> map(params);
  const auto vel = map.velocity(t, label.a, label.b);
  const auto acc = map.acceleration(t, label.a, label.b);
  const auto J = map.partials(t, label.a, label.b);
  const double rho = params.constants.rho;
  const double omega = params.constants.omega;
  const double g = params.constants.g;

  const double horizontal = acc.first + 2.0 * omega * vel.second;
  const double vertical = acc.second - 2.0 * omega * vel.first + g;
  const double rhs_a = -rho * horizontal * J.xa - rho * vertical * J.za;
  const double rhs_b = -rho * horizontal * J.xb - rho * vertical * J.zb;
  return {std::abs(rhs_a), std::abs(pressure_gradient_b(params, label.b) - rhs_b)};
}

GridSpec default_grid(const WaveParameters& params, std::size_t nx,
                      std::size_t nz) {
  const double trough = params.b0 - std::exp(params.k * params.b0) / params.k;
  GridSpec grid;
  grid.nx = nx;
  grid.nz = nz;
  grid.x_min = 0.0;
  grid.x_max = 2.0 * std::numbers::pi / params.k;
  grid.z_min = trough - 2.0 / params.k;
  grid.z_max = trough - 0.2 / params.k;
  grid.t = 0.0;
  return grid;
}

ResidualReport verify_grid(const WaveParameters& params, const GridSpec& grid,
                           double h, std::size_t surface_samples) {
  ResidualReport report;
  report.h = h;
  report.h_t = time_step(params, h);
  report.grid = grid;

  for (std::size_t ix = 0; ix < grid.nx; ++ix) {
    const double x = grid.x_min + (grid.x_max - grid.x_min) * static_cast<double>(ix) /
                                      static_cast<double>(grid.nx);
    for (std::size_t iz = 0; iz < grid.nz; ++iz) {
      const double z =
          grid.nz < 2 ? grid.z_min
                      : grid.z_min + (grid.z_max - grid.z_min) * static_cast<double>(iz) /
                                         static_cast<double>(grid.nz - 1);
      try {
        const EulerResidual r = euler_residual(params, grid.t, x, z, h);
        report.momentum_x = std::max(report.momentum_x, r.momentum_x);
        report.momentum_z = std::max(report.momentum_z, r.momentum_z);
        report.divergence = std::max(report.divergence, r.divergence);
        ++report.interior_samples;
      } catch (const NumericError&) {
        ++report.unresolved;
      }
    }
  }

  const double wavelength = 2.0 * std::numbers::pi / params.k;
  std::vector<double> labels(surface_samples);
  for (std::size_t j = 0; j < surface_samples; ++j) {
    labels[j] = wavelength * (static_cast<double>(j) + 0.5) /
                static_cast<double>(surface_samples);
  }
  const BoundaryResiduals bc = boundary_residuals(params, grid.t, labels);
  report.dynamic_bc = bc.dynamic_bc;
  report.kinematic_bc = bc.kinematic_bc;
  report.surface_samples = bc.evaluated;
  report.excluded_cusps = bc.excluded_cusps;

  // Far field: deep row, several phases of the wave.
  const ExtMap map(params);
  const double trough = params.b0 - std::exp(params.k * params.b0) / params.k;
  report.farfield_depth = trough - 10.0 / params.k;
  const double speed = std::max({std::abs(params.c), std::abs(params.m), 1.0});
  const double period = wavelength / speed;
  Ext worst = 0;
  for (int it = 0; it < 4; ++it) {
    const Ext t = grid.t + 0.25 * period * it;
    for (int ix = 0; ix < 16; ++ix) {
      const Ext x = grid.x_min + wavelength * ix / 16.0;
      try {
        const Reduced r = reduced_state(map, params, t, x, report.farfield_depth);
        worst = std::max({worst, std::abs(r.du), std::abs(r.w)});
        ++report.farfield_samples;
      } catch (const NumericError&) {
        ++report.unresolved;
      }
    }
  }
  report.farfield = static_cast<double>(worst);
  return report;
}

double richardson_order(double coarse, double fine, double ratio) {
  return std::log(coarse / fine) / std::log(ratio);
}

OrderStudy order_study(const WaveParameters& params, const GridSpec& grid,
                       double h, std::size_t levels,
                       std::size_t surface_samples) {
  OrderStudy study;
  double step = h;
  for (std::size_t i = 0; i < levels; ++i) {
    study.reports.push_back(verify_grid(params, grid, step, surface_samples));
    step /= 2.0;
  }
  for (std::size_t i = 1; i < study.reports.size(); ++i) {
    const ResidualReport& coarse = study.reports[i - 1];
    const ResidualReport& fine = study.reports[i];
    study.order_momentum_x.push_back(richardson_order(coarse.momentum_x, fine.momentum_x));
    study.order_momentum_z.push_back(richardson_order(coarse.momentum_z, fine.momentum_z));
    study.order_divergence.push_back(richardson_order(coarse.divergence, fine.divergence));
  }
  return study;
}

} // namespace gerstner
