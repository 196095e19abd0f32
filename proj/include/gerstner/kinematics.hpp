#pragma once

#include "gerstner/params.hpp"

#include <cstddef>
#include <vector>

namespace gerstner {

/// Lagrangian coordinates of one particle; b <= b0.
struct ParticleLabel {
  double a = 0.0;
  double b = 0.0;
};

struct Position {
  double x;
  double z;
};

struct Velocity {
  double u;
  double w;
};

struct Acceleration {
  double ax;
  double az;
};

struct KinematicState {
  double x, z;   // m
  double u, w;   // m/s
  double ax, az; // m/s^2
};

/// Partial derivatives of the flow map with respect to the labels.
struct JacobianSample {
  double xa, xb, za, zb;
  double det; // xa * zb - xb * za
};

struct TrajectorySample {
  double t;
  ParticleLabel label;
  KinematicState state;
};

struct SurfacePoint {
  double t;
  double x;
  double eta;
};

// All functions below throw DomainError when label.b > params.b0.

Position position(const WaveParameters& params, double t, ParticleLabel label);
Velocity velocity(const WaveParameters& params, double t, ParticleLabel label);
Acceleration acceleration(const WaveParameters& params, double t,
                          ParticleLabel label);
KinematicState kinematic_state(const WaveParameters& params, double t,
                               ParticleLabel label);
JacobianSample jacobian(const WaveParameters& params, double t,
                        ParticleLabel label);

/// Label abscissa a with X(t, a, b) = X. Throws NumericError (carrying the
/// best iterate) if the safeguarded Newton iteration does not converge.
double invert_x(const WaveParameters& params, double t, double X, double b);

/// Label of the interior point (X, Z). Throws OutOfDomainError when the
/// point is on or above the free surface.
ParticleLabel invert_map(const WaveParameters& params, double t, double X,
                         double Z);

/// Free-surface elevation eta(t, X).
double surface_profile(const WaveParameters& params, double t, double X);

/// n surface points over one wavelength, sampled uniformly in the label
/// abscissa a in [a_start, a_start + 2 pi / k). Exact at cusps, where the
/// root-finding route of surface_profile is least accurate.
std::vector<SurfacePoint> sample_surface(const WaveParameters& params, double t,
                                         std::size_t n, double a_start = 0.0);

/// n samples uniformly spaced over [t0, t1] (both endpoints included).
std::vector<TrajectorySample> sample_trajectory(const WaveParameters& params,
                                                ParticleLabel label, double t0,
                                                double t1, std::size_t n);

} // namespace gerstner
