#pragma once

#include "gerstner/kinematics.hpp"
#include "gerstner/params.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gerstner {

/// Velocity and pressure at a fixed point of the fluid domain.
struct EulerianSample {
  double x, z;
  double u, w;
  double p;
  ParticleLabel label; // particle occupying (x, z) at time t
  bool on_surface = false;
};

/// Pressure on the isobar b (the pressure depends on the label depth only).
double pressure(const WaveParameters& params, double b);

/// dP/db from the closed form of the pressure.
double pressure_gradient_b(const WaveParameters& params, double b);

/// Vorticity u_Z - w_X on the level b. Zero for m = 0. Throws
/// SingularityError at b = 0 when m != 0; the error carries the signed
/// infinity -sign(m) * inf.
double vorticity(const WaveParameters& params, double b);

/// Lifts velocity and pressure to the point (X, Z), which must satisfy
/// Z <= eta(t, X). Throws OutOfDomainError above the surface.
EulerianSample eulerian_state(const WaveParameters& params, double t, double X,
                              double Z);

struct EulerResidual {
  double momentum_x; // m/s^2
  double momentum_z; // m/s^2
  double divergence; // 1/s
};

/// Time step paired with the spatial step h in all Eulerian differencing:
/// h / max(|c|, |m|, 1 m/s). With |c| dominant, a time shift of one step
/// moves the wave pattern by exactly h.
double time_step(const WaveParameters& params, double h);

/// Residuals of the two momentum equations (Coriolis terms +2 omega w and
/// -2 omega u) and of the continuity equation at (X, Z). All derivatives are
/// central differences of the inverted fields; nothing is taken from the
/// closed-form identities being checked. Requires Z <= eta(t, X) - 2h.
EulerResidual euler_residual(const WaveParameters& params, double t, double X,
                             double Z, double h);

/// u_Z - w_X by central differences of the inverted velocity field.
double vorticity_fd(const WaveParameters& params, double t, double X, double Z,
                    double h);

struct BoundaryResiduals {
  double dynamic_bc = 0.0;   // |P(b0) - P0|, Pa
  double kinematic_bc = 0.0; // max |w - (u - c) eta_X|, m/s
  std::size_t evaluated = 0;
  std::size_t excluded_cusps = 0; // surface labels with X_a ~ 0 (b0 = 0 crests)
};

/// Free-surface conditions on the particles b = b0 with the given abscissas.
/// The slope is taken in label space, eta_X = Z_a / X_a.
BoundaryResiduals boundary_residuals(const WaveParameters& params, double t,
                                     std::span<const double> a_surface_samples);

struct PressureCheck {
  double r_pa; // |P_a - rhs|, Pa/m
  double r_pb; // |P_b - rhs|, Pa/m
};

/// Residuals of the label-space momentum balance
///   P_a = -rho (X_tt + 2 omega Z_t) X_a - rho (Z_tt - 2 omega X_t + g) Z_a
///   P_b = -rho (X_tt + 2 omega Z_t) X_b - rho (Z_tt - 2 omega X_t + g) Z_b
/// with P_a = 0 and P_b from the closed-form pressure.
PressureCheck lagrangian_pressure_check(const WaveParameters& params, double t,
                                        ParticleLabel label);

/// Rectangular Eulerian grid. x spans [x_min, x_max) and z spans
/// [z_min, z_max] inclusive.
struct GridSpec {
  std::size_t nx = 20;
  std::size_t nz = 20;
  double x_min = 0.0;
  double x_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;
  double t = 0.0;
};

/// One wavelength in x; z from 2/k below the trough up to 0.2/k below it.
GridSpec default_grid(const WaveParameters& params, std::size_t nx = 20,
                      std::size_t nz = 20);

struct ResidualReport {
  double momentum_x = 0.0;
  double momentum_z = 0.0;
  double divergence = 0.0;
  double dynamic_bc = 0.0;
  double kinematic_bc = 0.0;
  double farfield = 0.0;
  double h = 0.0;
  double h_t = 0.0;
  GridSpec grid;
  double farfield_depth = 0.0;
  std::size_t interior_samples = 0;
  std::size_t surface_samples = 0;
  std::size_t excluded_cusps = 0;
  std::size_t farfield_samples = 0;
  std::size_t unresolved = 0; // grid points where inversion failed
};

/// Runs every check of the Eulerian system over a grid. Max reductions only,
/// so the result does not depend on evaluation order.
ResidualReport verify_grid(const WaveParameters& params, const GridSpec& grid,
                           double h, std::size_t surface_samples = 1000);

/// Observed order log(coarse/fine)/log(ratio).
double richardson_order(double coarse, double fine, double ratio = 2.0);

struct OrderStudy {
  std::vector<ResidualReport> reports; // h, h/2, h/4, ...
  std::vector<double> order_momentum_x;
  std::vector<double> order_momentum_z;
  std::vector<double> order_divergence;
};

OrderStudy order_study(const WaveParameters& params, const GridSpec& grid,
                       double h, std::size_t levels = 3,
                       std::size_t surface_samples = 1000);

} // namespace gerstner
